"""Truncated elements of the multivariable Habiro ring.

An element of the completion lim_N Z[q_1..q_n]/I_{n,N}, where
I_{n,N} = ({N}_{q_1}!, ..., {N}_{q_n}!), is represented by an explicit
depth N and the canonical representative of its image modulo I_{n,N}.
Evaluation and Taylor expansion at roots of unity are exact once the
depth is large enough for every generator of I_{n,N} to vanish to the
required order at the point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .cyclotomic import RootOfUnity, parse_root, q_factorial
from .errors import InsufficientDepthError, ParseError, PreconditionError
from .ring_core import CycloElem, Poly, _dense_rem_monic, parse_poly

__all__ = [
    "HabiroElement",
    "HabiroSeries",
    "TaylorJet",
    "habiro_reduce",
    "habiro_ring_op",
    "from_series",
    "habiro_eval",
    "habiro_taylor",
    "habiro_alpha",
    "habiro_q_inverse",
    "kontsevich_zagier",
    "coproduct",
    "counit",
    "monoid_completion_ideal",
    "zagier_radial",
    "radial_extrapolate",
    "kz_radial_limit",
    "KZ_RADIAL_SIGN",
    "required_depth",
    "parse_habiro",
]

# F(zeta) = KZ_RADIAL_SIGN * lim_{r -> 1^-} phi(r zeta), phi the half theta series.
# Fixed numerically at zeta = -1, where F(-1) = 3 and phi(-r) -> -3.
KZ_RADIAL_SIGN = -1


def _reduce_rep(p, N):
    """Remainder of p modulo ({N}_{q_1}!, ..., {N}_{q_n}!), dividing variable by variable."""
    if N < 1:
        raise PreconditionError(f"Habiro depth must be >= 1, got {N}")
    if not p.is_integral:
        raise ValueError("Habiro representatives need integer coefficients")
    n = p.nvars
    divisor = q_factorial(N).coeffs()
    d = len(divisor) - 1
    terms = p.terms
    for i in range(n):
        if all(e[i] < d for e in terms):
            continue
        groups = {}
        for e, c in terms.items():
            rest = e[:i] + e[i + 1:]
            groups.setdefault(rest, {})[e[i]] = c
        out = {}
        for rest, col in groups.items():
            top = max(col)
            if top >= d:
                dense = [0] * (top + 1)
                for k, c in col.items():
                    dense[k] = c
                dense = _dense_rem_monic(dense, divisor)
                col = {k: c for k, c in enumerate(dense) if c}
            for k, c in col.items():
                out[rest[:i] + (k,) + rest[i:]] = c
        terms = out
    return Poly(terms, n)


@dataclass(frozen=True)
class HabiroElement:
    """Element of Z[q_1..q_n] / I_{n,N}; ``rep`` is always the canonical remainder."""

    n: int
    depth: int
    rep: Poly

    def __post_init__(self):
        if self.rep.nvars != self.n:
            raise ValueError("representative has the wrong number of variables")

    @classmethod
    def const(cls, c, n=1, depth=1):
        return habiro_reduce(Poly.const(c, n), n, depth)

    @classmethod
    def var(cls, i, n, depth):
        return habiro_reduce(Poly.var(i, n), n, depth)

    def restrict(self, depth):
        """Image at a smaller depth."""
        if depth > self.depth:
            raise PreconditionError(f"cannot raise depth from {self.depth} to {depth}")
        return habiro_reduce(self.rep, self.n, depth)

    def is_zero(self):
        return self.rep.is_zero()

    def _other(self, other):
        if isinstance(other, HabiroElement):
            return other
        if isinstance(other, int):
            return HabiroElement.const(other, self.n, self.depth)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return habiro_ring_op("add", self, other)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return habiro_ring_op("mul", self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return habiro_ring_op("neg", self)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, k):
        result = HabiroElement.const(1, self.n, self.depth)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, *zetas):
        return habiro_eval(self, zetas)

    def format(self):
        return f"{{n={self.n}, N={self.depth}, rep={self.rep.format()}}}"

    def __str__(self):
        return self.format()


def habiro_reduce(p, n=None, N=1):
    """Canonical element of Z[q_1..q_n]/I_{n,N} represented by ``p``."""
    if n is None:
        n = p.nvars
    if p.nvars != n:
        raise ValueError(f"polynomial has {p.nvars} variables, expected {n}")
    return HabiroElement(n, N, _reduce_rep(p, N))


def habiro_ring_op(op, x, y=None):
    if op == "neg":
        return HabiroElement(x.n, x.depth, -x.rep)
    if x.n != y.n:
        raise ValueError(f"mismatched variable counts: {x.n} vs {y.n}")
    N = min(x.depth, y.depth)
    a = x.rep if x.depth == N else _reduce_rep(x.rep, N)
    b = y.rep if y.depth == N else _reduce_rep(y.rep, N)
    if op == "add":
        return HabiroElement(x.n, N, a + b)
    if op == "mul":
        return habiro_reduce(a * b, x.n, N)
    raise ValueError(f"unknown Habiro ring operation {op!r}")


# series -----------------------------------------------------------------------


@dataclass(frozen=True)
class HabiroSeries:
    """Finite list of coefficient polynomials a_0, a_1, ... of
    f = a_0 + sum_k a_k (1 - q)(1 - q^2)...(1 - q^k).

    When ``normalized`` is set each a_k (k >= 1) has degree <= k - 1.
    """

    coeffs: tuple
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(
            c if isinstance(c, Poly) else Poly.const(c) for c in self.coeffs))
        if self.normalized:
            for k, a in enumerate(self.coeffs[1:], start=1):
                if a.degree() > k - 1:
                    raise ValueError(f"a_{k} has degree {a.degree()} > {k - 1}")

    @classmethod
    def kontsevich_zagier(cls, length):
        return cls(tuple(Poly.const(1) for _ in range(length)), normalized=True)

    @classmethod
    def q_inverse(cls, length):
        # q^{-1} = 1 + sum_{k>=1} q^k (1-q)...(1-q^k)
        return cls(tuple(Poly.var() ** k if k else Poly.const(1) for k in range(length)))


def from_series(s, depth, n=1):
    """Sum the terms of ``s`` with k < depth; the rest lie in I_{1,depth}."""
    if n != 1:
        raise ValueError("series are one-variable")
    total = Poly.const(0)
    prod_ = Poly.const(1)
    for k, a in enumerate(s.coeffs[:depth]):
        if k:
            prod_ = prod_ * (1 - Poly.var() ** k)
        if a:
            total = total + a * prod_
    return habiro_reduce(total, 1, depth)


def kontsevich_zagier(depth):
    """The element F = 1 + sum_n (1-q)...(1-q^n) at the given depth."""
    return from_series(HabiroSeries.kontsevich_zagier(depth), depth)


def habiro_q_inverse(depth):
    """q^{-1} = 1 + sum_{n>=1} (-1)^n q^n {n}_q! truncated at ``depth``."""
    if depth < 1:
        raise PreconditionError("depth must be >= 1")
    q = Poly.var()
    total = Poly.const(1)
    for k in range(1, depth):
        total = total + (-1) ** k * q**k * q_factorial(k)
    return habiro_reduce(total, 1, depth)


# evaluation and Taylor expansion ----------------------------------------------


def _as_roots(zetas, n):
    if isinstance(zetas, RootOfUnity):
        zetas = (zetas,)
    zetas = tuple(zetas)
    if len(zetas) != n:
        raise ValueError(f"expected {n} roots of unity, got {len(zetas)}")
    return zetas


def required_depth(zetas, order=1):
    """Sufficient depth M * max order for Taylor coefficients below total order M."""
    return order * max(z.m for z in zetas)


def _check_depth(f, zetas, order, what):
    need = required_depth(zetas, order)
    if f.depth < need:
        raise InsufficientDepthError(f.depth, need, what)


def habiro_eval(f, zetas):
    """Exact value of f at a tuple of roots of unity, in conductor lcm of their orders."""
    zetas = _as_roots(zetas, f.n)
    _check_depth(f, zetas, 1, "evaluation")
    L = math.lcm(*(z.m for z in zetas))
    steps = [z.k * (L // z.m) for z in zetas]
    arr = [0] * L
    for exp, c in f.rep.items():
        arr[sum(e * s for e, s in zip(exp, steps)) % L] += c
    return CycloElem(L, arr)


@dataclass(frozen=True)
class TaylorJet:
    """Divided-power Taylor coefficients: ``coeffs[j]`` multiplies prod_i (q_i - zeta_i)^{j_i}."""

    center: tuple
    order: int
    coeffs: dict = field(compare=False)

    def __getitem__(self, index):
        if isinstance(index, int):
            index = (index,)
        if sum(index) >= self.order:
            raise KeyError(index)
        return self.coeffs.get(tuple(index), CycloElem.from_scalar(0, self._conductor()))

    def _conductor(self):
        return math.lcm(*(z.m for z in self.center))

    def __eq__(self, other):
        if not isinstance(other, TaylorJet):
            return NotImplemented
        if self.center != other.center or self.order != other.order:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self[k] == other[k] for k in keys)

    __hash__ = None

    def format(self):
        names = ["q"] if len(self.center) == 1 else [f"q{i + 1}" for i in range(len(self.center))]
        parts = []
        for idx in sorted(self.coeffs):
            c = self.coeffs[idx]
            if c.is_zero():
                continue
            mono = "*".join(
                _shift(n, z) if e == 1 else f"{_shift(n, z)}^{e}"
                for n, z, e in zip(names, self.center, idx) if e)
            sign = "+"
            if c.is_rational():
                r = c.coeffs[0]
                sign, r = ("-", -r) if r < 0 else ("+", r)
                value = str(r) if (r != 1 or not mono) else ""
            else:
                value = c.format()
            body = f"{value}*{mono}" if value and mono else (value or mono)
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return out + "".join(f" {s} {b}" for s, b in parts[1:])


def _shift(name, z):
    if z.m == 1:
        return f"({name}-1)"
    if z.m == 2:
        return f"({name}+1)"
    return f"({name}-{z})"


def _multi_indices(n, M):
    return [j for j in product(range(M), repeat=n) if sum(j) < M]


def habiro_taylor(f, zetas, order):
    """Divided-power Taylor jet of f at ``zetas`` with all terms of total degree < order."""
    zetas = _as_roots(zetas, f.n)
    if order < 1:
        raise PreconditionError("Taylor order must be >= 1")
    _check_depth(f, zetas, order, f"Taylor expansion of order {order}")
    L = math.lcm(*(z.m for z in zetas))
    steps = [z.k * (L // z.m) for z in zetas]
    indices = _multi_indices(f.n, order)
    buckets = {j: [0] * L for j in indices}
    for exp, c in f.rep.items():
        for j in indices:
            if any(ji > ei for ji, ei in zip(j, exp)):
                continue
            w = c
            for ji, ei in zip(j, exp):
                if ji:
                    w *= math.comb(ei, ji)
            pos = sum((ei - ji) * s for ei, ji, s in zip(exp, j, steps)) % L
            buckets[j][pos] += w
    coeffs = {j: CycloElem(L, arr) for j, arr in buckets.items()}
    return TaylorJet(zetas, order, coeffs)


def habiro_alpha(f, zeta, order):
    """Expand f in powers of (q_{n+1} - zeta): the first ``order`` coefficients in R_n.

    The coefficient ring is the integers, so the last-variable center must
    be a rational root of unity (1 or -1).
    """
    if f.n < 2:
        raise ValueError("need at least two variables")
    if zeta.m > 2:
        raise PreconditionError(
            f"alpha needs the last center in the coefficient ring Z; {zeta} is not rational")
    _check_depth(f, (zeta,), order, f"alpha expansion of order {order}")
    z = 1 if zeta.m == 1 else -1
    n = f.n - 1
    coeffs = [dict() for _ in range(order)]
    for exp, c in f.rep.items():
        rest, e = exp[:-1], exp[-1]
        for j in range(min(e, order - 1) + 1):
            w = c * math.comb(e, j) * z ** (e - j)
            bucket = coeffs[j]
            v = bucket.get(rest, 0) + w
            if v:
                bucket[rest] = v
            else:
                bucket.pop(rest, None)
    return [habiro_reduce(Poly(t, n), n, f.depth) for t in coeffs]


# Hopf structure and monoid completions ----------------------------------------


def coproduct(f):
    """Ring map q_i -> q_i * q_{n+i} into 2n variables, reduced at the same depth."""
    n = f.n
    images = [Poly.var(i, 2 * n) * Poly.var(n + i, 2 * n) for i in range(n)]
    return habiro_reduce(f.rep.compose(images), 2 * n, f.depth)


def counit(g, n):
    """Set the second block of 2n variables to 1."""
    if g.n != 2 * n:
        raise ValueError("expected an element in 2n variables")
    images = [Poly.var(i, n) for i in range(n)] + [Poly.const(1, n)] * n
    return habiro_reduce(g.rep.compose(images), n, g.depth)


def monoid_completion_ideal(monoid, generators=None, depth=1):
    """Generators {N}_m! (m in ``generators``) of the completion ideal in the monoid ring.

    Monoid elements are exponent vectors over the monoid ring's variables;
    only the listed generators are used, and the list is returned unreduced.
    """
    from .monoid_scheme import monoid_ring_variables, standard_generators

    nv = monoid_ring_variables(monoid)
    if generators is None:
        generators = standard_generators(monoid)
    out = []
    for g in generators:
        g = (g,) if isinstance(g, int) else tuple(g)
        if len(g) != nv or any(e < 0 for e in g):
            raise ValueError(f"generator {g} is not a monomial in {nv} variables")
        m = Poly.monomial(g)
        acc = Poly.const(1, nv)
        for j in range(1, depth + 1):
            acc = acc * (m**j - 1)
        out.append(acc)
    return out


# radial limits ----------------------------------------------------------------


def _chi12(n):
    r = n % 12
    return np.where((r == 1) | (r == 11), 1.0, np.where((r == 5) | (r == 7), -1.0, 0.0))


def _auto_terms(r):
    if r <= 0:
        return 1
    # tail beyond n contributes ~ n exp(-n^2 |log r| / 24); stop at exponent 60
    nmax = math.sqrt(24 * 60 / -math.log(r)) + 13
    return max(1, int(nmax / 3) + 1)


def zagier_radial(zeta, radii, terms=None):
    """Partial sums of phi(q) = 1/2 sum_n n chi_12(n) q^{(n^2-1)/24} at q = r*zeta.

    ``terms`` counts nonzero terms (n coprime to 6); by default enough are
    taken for the omitted tail to be below double precision.
    """
    out = []
    for r in radii:
        if not 0 <= r < 1:
            raise PreconditionError(f"radius must lie in [0, 1), got {r}")
        count = terms if terms is not None else _auto_terms(r)
        # the n coprime to 6 are 6j +- 1; take the first ``count`` of them
        j = np.arange(count + 2)
        n = np.sort(np.concatenate([6 * j + 1, 6 * j[1:] - 1]))[:count]
        e = (n * n - 1) // 24
        mag = np.power(float(r), e.astype(float))
        angle = 2 * np.pi * ((zeta.k * e) % zeta.m) / zeta.m
        out.append(complex(0.5 * np.sum(n * _chi12(n) * mag * np.exp(1j * angle))))
    return out


def radial_extrapolate(hs, values):
    """Neville extrapolation of values(h) to h = 0."""
    hs = [float(h) for h in hs]
    table = [complex(v) for v in values]
    k = len(hs)
    for level in range(1, k):
        table = [
            (hs[i + level] * table[i] - hs[i] * table[i + 1]) / (hs[i + level] - hs[i])
            for i in range(k - level)
        ]
    return table[0]


def kz_radial_limit(zeta, exponents=range(1, 7), terms=None):
    """Estimate of F(zeta) from the half theta series along r = 1 - 10^-k."""
    hs = [10.0**-k for k in exponents]
    values = zagier_radial(zeta, [1 - h for h in hs], terms)
    return KZ_RADIAL_SIGN * radial_extrapolate(hs, values)


# text -------------------------------------------------------------------------

_HAB_RE = re.compile(r"\s*\{\s*n\s*=\s*(\d+)\s*,\s*N\s*=\s*(\d+)\s*,\s*rep\s*=\s*(.*)\}\s*")


def parse_habiro(text, depth=None):
    """Parse ``{n=.., N=.., rep=..}``, the names ``kz`` / ``qinv``, or a bare polynomial."""
    text = text.strip()
    m = _HAB_RE.fullmatch(text)
    if m:
        n, N = int(m.group(1)), int(m.group(2))
        if N < 1 or n < 1:
            raise ParseError("Habiro depth and variable count must be positive", text)
        names = ["q"] if n == 1 else [f"q{i + 1}" for i in range(n)]
        rep = parse_poly(m.group(3), names)
        if not rep.is_integral:
            raise ParseError("Habiro representative must have integer coefficients", m.group(3))
        return habiro_reduce(rep, n, N)
    if depth is None:
        raise ParseError("a depth is required for this Habiro element", text)
    if text == "kz":
        return kontsevich_zagier(depth)
    if text == "qinv":
        return habiro_q_inverse(depth)
    rep = parse_poly(text)
    if not rep.is_integral:
        raise ParseError("Habiro representative must have integer coefficients", text)
    return habiro_reduce(rep, rep.nvars, depth)


def parse_roots(texts):
    return tuple(parse_root(t) for t in texts)
