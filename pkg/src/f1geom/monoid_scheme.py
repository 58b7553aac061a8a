"""Affine monoid schemes: spectra, base change to Z, monomial GL(n), smooth toric monoids."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, PreconditionError
from .ring_core import Poly

__all__ = [
    "FreeMonoid",
    "FreeAbelian",
    "Cyclic",
    "ToricSmooth",
    "PrimeIdeal",
    "Spectrum",
    "RingPresentation",
    "MonomialMatrix",
    "spec",
    "base_change",
    "gl_points",
    "toric_monoid_from_cone",
    "extend_to_basis",
    "monoid_ring_variables",
    "standard_generators",
    "monoid_ring_reduce",
    "parse_monoid",
    "format_monoid",
    "int_det",
]


@dataclass(frozen=True)
class FreeMonoid:
    """N^k."""

    k: int


@dataclass(frozen=True)
class FreeAbelian:
    """Z^k."""

    k: int


@dataclass(frozen=True)
class Cyclic:
    """Z/nZ."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cyclic group order must be >= 1")


@dataclass(frozen=True)
class ToricSmooth:
    """Integer points of the dual of a smooth cone, split as N^k x Z^m.

    ``rays`` generate the cone in Z^(k+m); ``dual_basis`` lists the k + m
    dual lattice vectors, the first k pairing to the identity with the rays.
    """

    k: int
    m: int
    rays: tuple = ()
    dual_basis: tuple = field(default=(), compare=False)

    @property
    def rank(self):
        return self.k + self.m


def _free_rank(M):
    if isinstance(M, (FreeMonoid, ToricSmooth)):
        return M.k
    return 0


def _group_rank(M):
    if isinstance(M, FreeAbelian):
        return M.k
    if isinstance(M, ToricSmooth):
        return M.m
    return 0


def monoid_ring_variables(M):
    if isinstance(M, Cyclic):
        return 1
    return max(1, _free_rank(M) + _group_rank(M))


def standard_generators(M):
    nv = monoid_ring_variables(M)
    if isinstance(M, Cyclic):
        return [(1,)]
    return [tuple(int(i == j) for j in range(nv)) for i in range(_free_rank(M) + _group_rank(M))]


def monoid_ring_reduce(M, p):
    """Normal form in Z[M]; only Z/n imposes a relation (q^n = 1)."""
    if isinstance(M, Cyclic):
        out = {}
        for (e,), c in p.items():
            key = (e % M.n,)
            out[key] = out.get(key, 0) + c
        return Poly(out, 1)
    return p


# spectra ----------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class PrimeIdeal:
    """P_S = {x : x_i > 0 for some i in S}, S a set of free coordinates (1-based)."""

    support: frozenset

    def contains(self, x):
        return any(x[i - 1] > 0 for i in self.support)

    def format(self):
        if not self.support:
            return "()"
        return "(" + ",".join(f"x{i}" for i in sorted(self.support)) + ")"


@dataclass(frozen=True)
class Spectrum:
    monoid: object
    points: tuple

    def le(self, a, b):
        """Specialization order: a is contained in b."""
        return a.support <= b.support

    def closed_points(self):
        return [p for p in self.points if all(not self.le(p, o) or p == o for o in self.points)]

    def generic_point(self):
        return self.points[0]


def spec(M):
    """All prime ideals, generic point first, then by size and lexicographically."""
    k = _free_rank(M)
    subsets = [frozenset(c) for r in range(k + 1) for c in itertools.combinations(range(1, k + 1), r)]
    return Spectrum(M, tuple(PrimeIdeal(s) for s in subsets))


def sample_elements(M, bound=2):
    """Monoid elements with free coordinates in [0, bound] and group coordinates in [-1, 1]."""
    if isinstance(M, Cyclic):
        return [(a,) for a in range(M.n)]
    k, m = _free_rank(M), _group_rank(M)
    return [
        a + b
        for a in itertools.product(range(bound + 1), repeat=k)
        for b in itertools.product((-1, 0, 1), repeat=m)
    ]


def monoid_op(M, x, y):
    if isinstance(M, Cyclic):
        return ((x[0] + y[0]) % M.n,)
    return tuple(a + b for a, b in zip(x, y))


def check_prime(M, P, elements=None):
    """Ideal property and primality of P on a finite element sample (exhaustive over pairs)."""
    if elements is None:
        elements = sample_elements(M)
    if isinstance(M, Cyclic):
        return not P.support
    for x in elements:
        for y in elements:
            xy = monoid_op(M, x, y)
            if P.contains(x) and not P.contains(xy):
                return False
            if P.contains(xy) and not (P.contains(x) or P.contains(y)):
                return False
    # proper: the unit is never in a prime
    return not P.contains(tuple(0 for _ in elements[0]))


# base change ------------------------------------------------------------------


@dataclass(frozen=True)
class RingPresentation:
    """Z[generators, inverted^-1] / (relations)."""

    generators: tuple
    inverted: tuple = ()
    relations: tuple = ()

    def format(self):
        gens = []
        for g in self.generators:
            gens.append(g)
            if g in self.inverted:
                gens.append(f"{g}^-1")
        body = "Z[" + ",".join(gens) + "]" if gens else "Z"
        if self.relations:
            names = list(self.generators) or ["q"]
            body += "/(" + ", ".join(r.format(names) for r in self.relations) + ")"
        return body

    __str__ = format


def _names(count):
    return ("q",) if count == 1 else tuple(f"q{i + 1}" for i in range(count))


def base_change(M):
    """Presentation of the monoid ring Z[M]."""
    if isinstance(M, Cyclic):
        return RingPresentation(("q",), (), (Poly.var() ** M.n - 1,))
    k, m = _free_rank(M), _group_rank(M)
    if k + m == 0:
        return RingPresentation(())
    names = _names(k + m)
    return RingPresentation(names, names[k:])


# GL(n) over F_1 -----------------------------------------------------------------


@dataclass(frozen=True)
class MonomialMatrix:
    """Column j holds ``entries[j]`` (an element of Z/m, written additively) in row ``perm[j]``."""

    perm: tuple
    entries: tuple
    modulus: int

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.entries) != n:
            raise ValueError("not a monomial matrix")

    @property
    def size(self):
        return len(self.perm)

    def compose(self, other):
        """Matrix product self * other."""
        perm = tuple(self.perm[other.perm[j]] for j in range(self.size))
        entries = tuple(
            (other.entries[j] + self.entries[other.perm[j]]) % self.modulus for j in range(self.size)
        )
        return MonomialMatrix(perm, entries, self.modulus)

    __matmul__ = compose

    def inverse(self):
        inv = [0] * self.size
        ent = [0] * self.size
        for j, i in enumerate(self.perm):
            inv[i] = j
            ent[i] = (-self.entries[j]) % self.modulus
        return MonomialMatrix(tuple(inv), tuple(ent), self.modulus)

    @classmethod
    def identity(cls, n, modulus):
        return cls(tuple(range(n)), (0,) * n, modulus)

    def rows(self):
        """Dense rows; nonzero entries printed as exponents of the generator g of Z/m."""
        out = [["0"] * self.size for _ in range(self.size)]
        for j, i in enumerate(self.perm):
            out[i][j] = f"g^{self.entries[j]}"
        return out


def gl_points(n, A):
    """All n x n monomial matrices over the cyclic group A, in lexicographic (perm, entries) order."""
    if n < 1:
        raise PreconditionError("GL(n) needs n >= 1")
    if not isinstance(A, Cyclic):
        raise PreconditionError("coefficients must be a cyclic group Z/m")
    return [
        MonomialMatrix(perm, entries, A.n)
        for perm in itertools.permutations(range(n))
        for entries in itertools.product(range(A.n), repeat=n)
    ]


# smooth cones -------------------------------------------------------------------


def int_det(rows):
    """Exact determinant of a square integer matrix (Bareiss)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _inverse(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [[x for x in r[n:]] for r in a]


def extend_to_basis(rays, dim):
    """Complete integer vectors to a lattice basis of Z^dim, or raise if impossible.

    Column operations bring the ray matrix R to [H | 0] with R U = [H | 0];
    the rays extend to a basis iff |det H| = 1, and then the last rows of
    U^{-1} complete them.
    """
    rays = [list(map(int, r)) for r in rays]
    k = len(rays)
    if any(len(r) != dim for r in rays):
        raise PreconditionError("ray dimension does not match the ambient lattice")
    R = [r[:] for r in rays]
    U = [[int(i == j) for j in range(dim)] for i in range(dim)]

    def colop(dst, src, f):
        for row in R:
            row[dst] -= f * row[src]
        for row in U:
            row[dst] -= f * row[src]

    def swap(a, b):
        for row in R + U:
            row[a], row[b] = row[b], row[a]

    for i in range(k):
        # gcd-reduce row i over columns i..dim-1
        while True:
            nz = [j for j in range(i, dim) if R[i][j]]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda j: abs(R[i][j]))
            for j in nz:
                if j != piv:
                    colop(j, piv, R[i][j] // R[i][piv])
        nz = [j for j in range(i, dim) if R[i][j]]
        if not nz:
            raise PreconditionError("rays are linearly dependent: not a smooth cone")
        swap(i, nz[0])
    H = [R[i][:k] for i in range(k)]
    det = int_det(H)
    if abs(det) != 1:
        raise PreconditionError(
            f"cone is not smooth: rays span a sublattice of index {abs(det)} in their saturation")
    Uinv = _inverse(U)
    extra = [[int(x) for x in Uinv[i]] for i in range(k, dim)]
    return [r[:] for r in rays] + extra


def toric_monoid_from_cone(rays, dim=None):
    """Dual monoid of the cone spanned by ``rays`` (must be part of a lattice basis)."""
    rays = [tuple(map(int, r)) for r in rays]
    if dim is None:
        if not rays:
            raise PreconditionError("ambient dimension needed for a cone without rays")
        dim = len(rays[0])
    basis = extend_to_basis(rays, dim)
    inv = _inverse(basis)  # columns of inv are the dual basis
    dual = tuple(tuple(int(inv[r][c]) for r in range(dim)) for c in range(dim))
    return ToricSmooth(len(rays), dim - len(rays), tuple(rays), dual)


# text -------------------------------------------------------------------------


def format_monoid(M):
    if isinstance(M, FreeMonoid):
        return f"N^{M.k}"
    if isinstance(M, FreeAbelian):
        return f"Z^{M.k}"
    if isinstance(M, Cyclic):
        return f"Z/{M.n}"
    rays = ",".join("[" + ",".join(map(str, r)) + "]" for r in M.rays)
    return f"cone{{d={M.rank}}}[{rays}]"


_MONO_RE = re.compile(r"\s*(?:(N|Z)\^(\d+)|Z/(\d+)|cone(?:\{d=(\d+)\})?\[(.*)\])\s*")


def parse_monoid(text):
    m = _MONO_RE.fullmatch(text)
    if not m:
        raise ParseError("malformed monoid literal", text)
    kind, k, n, d, body = m.groups()
    if kind == "N":
        return FreeMonoid(int(k))
    if kind == "Z":
        return FreeAbelian(int(k))
    if n is not None:
        if int(n) < 1:
            raise ParseError("cyclic order must be positive", n)
        return Cyclic(int(n))
    body = body.strip()
    rays = []
    if body:
        for item in re.findall(r"\[([^\[\]]*)\]", body):
            try:
                rays.append([int(x) for x in item.split(",")])
            except ValueError:
                raise ParseError("malformed ray", item) from None
        if not rays:
            raise ParseError("malformed ray list", body)
    dim = int(d) if d is not None else (len(rays[0]) if rays else None)
    if dim is None:
        raise ParseError("cone without rays needs {d=..}", text)
    return toric_monoid_from_cone(rays, dim)
