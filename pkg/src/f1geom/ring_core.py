"""Exact arithmetic foundation.

Sparse multivariate polynomials over the rationals (:class:`Poly`) and
elements of cyclotomic fields stored as residues modulo the cyclotomic
polynomial of their conductor (:class:`CycloElem`).  Everything here is
immutable; coefficients are Python ints whenever they are integral and
:class:`fractions.Fraction` otherwise.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import ParseError, PreconditionError

__all__ = [
    "Poly",
    "CycloElem",
    "poly_divrem",
    "eval_at_root",
    "cyclo_is_zero",
    "parse_poly",
    "totient",
    "divisors",
]


def _norm(c):
    """Canonical scalar: int when integral, Fraction otherwise."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


def _is_scalar(x):
    return isinstance(x, (int, Fraction)) or isinstance(x, Rational)


def divisors(n):
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def totient(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# dense helpers (coefficient lists, lowest degree first)


def _dense_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _dense_divrem_monic(a, b):
    """Quotient and remainder of dense ``a`` by monic dense ``b``."""
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            quot[i - db] = c
            for j in range(db):
                if b[j]:
                    a[i - db + j] -= c * b[j]
        a[i] = 0
    return quot, a[:db]


def _dense_rem_monic(a, b):
    return _dense_divrem_monic(a, b)[1]


@lru_cache(maxsize=None)
def _phi_dense(n):
    """Coefficients of the n-th cyclotomic polynomial by exact division of q^n - 1."""
    if n < 1:
        raise PreconditionError(f"cyclotomic polynomial index must be >= 1, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        quot, rem = _dense_divrem_monic(num, _phi_dense(d))
        if any(rem):
            raise ArithmeticError(f"inexact division computing Phi_{n}")
        num = quot
    return tuple(num)


# ---------------------------------------------------------------------------
# Poly


class Poly:
    """Sparse polynomial in ``nvars`` commuting variables with rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.  Zero
    coefficients are purged on construction, so ``==`` is structural.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms=None, nvars=1):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean = {}
        if terms:
            for exp, c in dict(terms).items():
                exp = (exp,) if isinstance(exp, int) else tuple(exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent {exp} for {nvars} variables")
                c = _norm(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, terms, nvars):
        # terms already canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    # constructors -----------------------------------------------------------

    @classmethod
    def const(cls, c, nvars=1):
        c = _norm(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, i=0, nvars=1):
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw({tuple(exp): 1}, nvars)

    @classmethod
    def monomial(cls, exp, c=1):
        exp = tuple(exp)
        return cls({exp: c}, len(exp))

    @classmethod
    def from_coeffs(cls, coeffs):
        """Univariate polynomial from a dense list, constant term first."""
        return cls._raw({(i,): _norm(c) for i, c in enumerate(coeffs) if c}, 1)

    # inspection -------------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_integral(self):
        return all(isinstance(c, int) for c in self._terms.values())

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self._terms), default=-1)

    def coeff(self, exp):
        if isinstance(exp, int):
            exp = (exp,)
        return self._terms.get(tuple(exp), 0)

    def coeffs(self):
        """Dense coefficient list of a univariate polynomial, constant term first."""
        self._need_univariate()
        out = [0] * (self.degree() + 1)
        for (e,), c in self._terms.items():
            out[e] = c
        return out

    def leading_coeff(self):
        self._need_univariate()
        return self._terms[(self.degree(),)] if self._terms else 0

    def is_monic(self):
        return self.nvars == 1 and bool(self._terms) and self.leading_coeff() == 1

    def _need_univariate(self):
        if self.nvars != 1:
            raise ValueError("univariate polynomial required")

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if _is_scalar(other):
            return Poly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other) and not isinstance(other, Poly):
            c = _norm(other)
            if not c:
                return Poly._raw({}, self.nvars)
            return Poly._raw({e: _norm(v * c) for e, v in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        if self.nvars == 1:
            for (a,), x in self._terms.items():
                for (b,), y in other._terms.items():
                    k = (a + b,)
                    out[k] = out.get(k, 0) + x * y
        else:
            for ea, x in self._terms.items():
                for eb, y in other._terms.items():
                    k = tuple(i + j for i, j in zip(ea, eb))
                    out[k] = out.get(k, 0) + x * y
        return Poly._raw({e: _norm(c) for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other) and not isinstance(other, Poly):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("non-negative integer exponent required")
        result = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            # rings with fewer variables embed via their leading variables
            if self.nvars == other.nvars:
                return self._terms == other._terms
            return self._stripped() == other._stripped()
        if _is_scalar(other):
            return self == Poly.const(other, self.nvars)
        return NotImplemented

    def _stripped(self):
        out = {}
        for exp, c in self._terms.items():
            e = list(exp)
            while e and e[-1] == 0:
                e.pop()
            out[tuple(e)] = c
        return out

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._stripped().items())))
        return self._hash

    # substitution -----------------------------------------------------------

    def __call__(self, *values):
        """Evaluate at scalars (or anything supporting + and *)."""
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values")
        total = 0
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(values, exp):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def compose(self, images):
        """Substitute polynomial ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise ValueError(f"expected {self.nvars} images")
        target = images[0].nvars
        cache = [{} for _ in images]

        def power(i, e):
            got = cache[i].get(e)
            if got is None:
                got = images[i] ** e
                cache[i][e] = got
            return got

        total = Poly.const(0, target)
        for exp, c in self._terms.items():
            term = Poly.const(c, target)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def embed(self, nvars, positions=None):
        """View as a polynomial in ``nvars`` variables; variable i goes to ``positions[i]``."""
        if positions is None:
            positions = range(self.nvars)
        positions = list(positions)
        out = {}
        for exp, c in self._terms.items():
            new = [0] * nvars
            for i, e in zip(positions, exp):
                new[i] += e
            out[tuple(new)] = c
        return Poly._raw(out, nvars)

    def divrem(self, other):
        return poly_divrem(self, other)

    # text -------------------------------------------------------------------

    def default_names(self):
        return ["q"] if self.nvars == 1 else [f"q{i + 1}" for i in range(self.nvars)]

    def format(self, names=None):
        if names is None:
            names = self.default_names()
        if not self._terms:
            return "0"
        pieces = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r}, nvars={self.nvars})"


def poly_divrem(a, b):
    """Divide univariate ``a`` by monic univariate ``b``: ``a == q*b + r``, ``deg r < deg b``."""
    if not isinstance(a, Poly) or not isinstance(b, Poly):
        raise TypeError("Poly operands required")
    if a.nvars != 1 or b.nvars != 1:
        raise ValueError(f"univariate operands required (got {a.nvars} and {b.nvars} variables)")
    if not b.is_monic():
        raise ValueError(f"divisor must be monic: {b}")
    quot, rem = _dense_divrem_monic(a.coeffs(), b.coeffs())
    return Poly.from_coeffs(quot), Poly.from_coeffs(rem)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = text[pos:].strip().split()[0] if text[pos:].strip() else text[pos:]
            raise ParseError("unexpected character in polynomial", bad[:1] if bad else bad)
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def _infer_names(idents):
    if not idents:
        return ["q"]
    split = {}
    for name in idents:
        m = re.fullmatch(r"([A-Za-z_]+?)(\d+)", name)
        split[name] = (m.group(1), int(m.group(2))) if m else (name, None)
    bases = {b for b, _ in split.values()}
    if len(bases) != 1:
        raise ParseError("mixed variable names", ",".join(sorted(idents)))
    base = bases.pop()
    indices = {i for _, i in split.values()}
    if indices == {None}:
        return [base]
    if None in indices or 0 in indices:
        raise ParseError("inconsistent variable indexing", ",".join(sorted(idents)))
    return [f"{base}{i}" for i in range(1, max(indices) + 1)]


def parse_poly(text, names=None):
    """Parse the polynomial text grammar (also accepts products, powers and parentheses).

    Variable names are inferred (``q``, or ``q1 .. qn``) unless ``names`` is given.
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty polynomial", text)
    tokens = _tokenize(text)
    idents = {v for kind, v in tokens if kind == "id"}
    if names is None:
        names = _infer_names(idents)
    index = {n: i for i, n in enumerate(names)}
    for name in idents:
        if name not in index:
            raise ParseError("unknown variable", name)
    nv = len(names)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else (None, "end of input")

    def take():
        tok = peek()
        pos[0] += 1
        return tok

    def expr():
        kind, v = peek()
        sign = 1
        if kind == "op" and v in "+-":
            take()
            sign = -1 if v == "-" else 1
        acc = term() * sign
        while True:
            kind, v = peek()
            if kind == "op" and v in "+-":
                take()
                t = term()
                acc = acc + t if v == "+" else acc - t
            else:
                return acc

    def term():
        acc = factor()
        while True:
            kind, v = peek()
            if kind == "op" and v in "*/":
                take()
                f = factor()
                if v == "*":
                    acc = acc * f
                else:
                    if f.degree() > 0 or f.is_zero():
                        raise ParseError("division by non-constant or zero", f.format(names))
                    acc = acc * (Fraction(1) / Fraction(f.coeff((0,) * nv)))
            else:
                return acc

    def factor():
        base = atom()
        kind, v = peek()
        if kind == "op" and v == "^":
            take()
            kind, e = take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", e)
            base = base**e
        return base

    def atom():
        kind, v = take()
        if kind == "num":
            return Poly.const(v, nv)
        if kind == "id":
            return Poly.var(index[v], nv)
        if kind == "op" and v == "(":
            inner = expr()
            kind2, v2 = take()
            if (kind2, v2) != ("op", ")"):
                raise ParseError("expected ')'", v2)
            return inner
        if kind == "op" and v == "-":
            return -atom()
        raise ParseError("unexpected token", v)

    result = expr()
    if pos[0] != len(tokens):
        raise ParseError("trailing input", str(tokens[pos[0]][1]))
    return result


# ---------------------------------------------------------------------------
# cyclotomic field elements


class CycloElem:
    """Element of Q(e^{2 pi i/m}) as its residue modulo Phi_m.

    ``coeffs`` has length exactly phi(m); entry j multiplies z^j where
    z = e^{2 pi i/m}.  Elements of different conductors are compared and
    combined after lifting both to the lcm of the conductors.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs=()):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        phi = _phi_dense(conductor)
        deg = len(phi) - 1
        coeffs = [_norm(c) for c in coeffs]
        if len(coeffs) > deg:
            coeffs = _dense_rem_monic(coeffs, phi)
        coeffs = list(coeffs) + [0] * (deg - len(coeffs))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(_norm(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CycloElem is immutable")

    @classmethod
    def from_scalar(cls, c, conductor=1):
        return cls(conductor, [c])

    @classmethod
    def root(cls, k, m):
        """The root of unity e^{2 pi i k/m} in conductor m."""
        arr = [0] * m
        arr[k % m] = 1
        return cls(m, arr)

    @classmethod
    def from_cyclic(cls, m, arr):
        """Reduce a residue modulo z^m - 1 (dense, length <= m) to canonical form."""
        return cls(m, arr)

    @property
    def residue(self):
        return Poly.from_coeffs(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def lift(self, m):
        """Same element in conductor ``m`` (a multiple of the current conductor)."""
        if m % self.conductor:
            raise ValueError(f"conductor {m} is not a multiple of {self.conductor}")
        if m == self.conductor:
            return self
        step = m // self.conductor
        arr = [0] * max(1, (len(self.coeffs) - 1) * step + 1)
        for j, c in enumerate(self.coeffs):
            arr[j * step] = c
        return CycloElem(m, arr)

    def _common(self, other):
        if isinstance(other, CycloElem):
            m = self.conductor * other.conductor // math.gcd(self.conductor, other.conductor)
            return self.lift(m), other.lift(m)
        if _is_scalar(other):
            return self, CycloElem.from_scalar(other, self.conductor)
        return None, None

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CycloElem(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CycloElem(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other) and not isinstance(other, CycloElem):
            c = _norm(other)
            return CycloElem(self.conductor, [x * c for x in self.coeffs])
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        prod = _dense_mul(_dense_trim(a.coeffs), _dense_trim(b.coeffs))
        return CycloElem(a.conductor, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other) and not isinstance(other, CycloElem):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            inv = Fraction(1) / Fraction(other)
            return self * inv
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("non-negative integer exponent required")
        result = CycloElem.from_scalar(1, self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    __hash__ = None

    def is_root_of_unity(self):
        """True iff this element is a root of unity.

        Roots of unity in Q(z_m) have order dividing lcm(2, m).
        """
        if self.is_zero():
            return False
        e = self.conductor if self.conductor % 2 == 0 else 2 * self.conductor
        return self**e == 1

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def to_complex(self):
        z = cmath.exp(2j * math.pi / self.conductor)
        return sum(complex(float(c)) * z**j for j, c in enumerate(self.coeffs))

    def format(self):
        return f"cyclo{{m={self.conductor}}}({self.residue.format(['z'])})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"CycloElem({self.format()!r})"


_CYCLO_RE = re.compile(r"\s*cyclo\{m=(\d+)\}\((.*)\)\s*")


def parse_cyclo(text):
    m = _CYCLO_RE.fullmatch(text)
    if not m:
        raise ParseError("malformed cyclotomic literal", text)
    conductor = int(m.group(1))
    if conductor < 1:
        raise ParseError("conductor must be positive", m.group(1))
    p = parse_poly(m.group(2), names=["z"])
    return CycloElem(conductor, p.coeffs() if p else [])


def cyclo_is_zero(e):
    return e.is_zero()


def eval_at_root(p, zeta):
    """Value of an integer univariate polynomial at ``zeta`` (anything with ``k``, ``m``)."""
    if p.nvars != 1:
        raise ValueError("univariate polynomial required")
    if not p.is_integral:
        raise ValueError("integer coefficients required")
    m, k = zeta.m, zeta.k
    arr = [0] * m
    for (e,), c in p.items():
        arr[(e * k) % m] += c
    return CycloElem(m, arr)
