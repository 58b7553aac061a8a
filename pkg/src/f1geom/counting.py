"""Gaussian binomials, F_1 zeta functions, the Rodriguez-Villegas transform and
the Golyshev functional-equation check."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import q_factorial
from .errors import ParseError, PreconditionError
from .ring_core import Poly, poly_divrem

__all__ = [
    "ZetaFactorization",
    "HilbertData",
    "RVReport",
    "gaussian_binomial",
    "zeta_f1",
    "rv_transform",
    "rv_check",
    "functional_eq_check",
    "hilbert_series_coeffs",
    "parse_zeta",
]


def gaussian_binomial(n, j):
    """{n}_q! / ({j}_q! {n-j}_q!) by exact division."""
    if not 0 <= j <= n:
        raise PreconditionError(f"need 0 <= j <= n, got n={n}, j={j}")
    num = q_factorial(n)
    quot, rem = poly_divrem(num, q_factorial(j) * q_factorial(n - j))
    if rem:
        raise ArithmeticError("inexact Gaussian binomial division")
    return quot


@dataclass(frozen=True)
class ZetaFactorization:
    """(2 pi)^two_pi * prod_k (s - k)^a_k, with ``factors`` sorted by k."""

    two_pi: int
    factors: tuple

    def __post_init__(self):
        merged = {}
        for k, a in self.factors:
            merged[k] = merged.get(k, 0) + a
        object.__setattr__(self, "factors", tuple(sorted((k, a) for k, a in merged.items() if a)))

    def __mul__(self, other):
        return ZetaFactorization(self.two_pi + other.two_pi, self.factors + other.factors)

    def __call__(self, s):
        value = (2 * math.pi) ** self.two_pi
        for k, a in self.factors:
            value *= (s - k) ** a
        return value

    def format(self):
        out = [f"(2pi)^{self.two_pi}"]
        for k, a in self.factors:
            base = "s" if k == 0 else (f"(s-{k})" if k > 0 else f"(s+{-k})")
            out.append(base if a == 1 else f"{base}^{a}")
        if len(out) == 1:
            return out[0]
        return out[0] + " * " + "*".join(out[1:])

    __str__ = format


_ZETA_FACTOR = re.compile(r"(s|\(s([+-])(\d+)\))(?:\^(-?\d+))?")


def parse_zeta(text):
    text = text.strip()
    m = re.fullmatch(r"\(2pi\)\^(-?\d+)(?:\s*\*\s*(.+))?", text)
    if not m:
        raise ParseError("malformed zeta factorization", text)
    factors = []
    if m.group(2):
        for piece in m.group(2).split("*"):
            f = _ZETA_FACTOR.fullmatch(piece.strip())
            if not f:
                raise ParseError("malformed zeta factor", piece.strip())
            k = 0 if f.group(1) == "s" else (int(f.group(3)) if f.group(2) == "-" else -int(f.group(3)))
            factors.append((k, int(f.group(4)) if f.group(4) else 1))
    return ZetaFactorization(int(m.group(1)), tuple(factors))


def zeta_f1(N):
    """Zeta function of an F_1 variety with counting polynomial N(q) = sum a_k q^k.

    Normalized so that P^k gives (2 pi)^-(k+1) s (s-1) ... (s-k).
    """
    if N.nvars != 1 or not N.is_integral:
        raise PreconditionError("counting polynomial must be univariate with integer coefficients")
    factors = tuple((e, c) for (e,), c in N.items())
    return ZetaFactorization(-sum(c for _, c in factors), factors)


# Hilbert polynomials ---------------------------------------------------------------


@dataclass(frozen=True)
class HilbertData:
    H: Poly
    d: int = None

    def __post_init__(self):
        if self.H.is_zero():
            raise PreconditionError("Hilbert polynomial must be nonzero")
        d = self.H.degree() + 1
        if self.d is None:
            object.__setattr__(self, "d", d)
        elif self.d != d:
            raise ValueError(f"declared dimension {self.d} != deg H + 1 = {d}")


def rv_transform(h):
    """P(t) with sum_n H(n) t^n = P(t) / (1 - t)^d."""
    H, d = h.H, h.d
    c = []
    for n in range(d + 1):
        c.append(sum((-1) ** k * math.comb(d, k) * Fraction(H(n - k)) for k in range(n + 1)))
    while c and c[-1] == 0:
        c.pop()
    return Poly.from_coeffs(c)


def hilbert_series_coeffs(P, d, count):
    """First ``count`` coefficients of P(t) / (1 - t)^d."""
    p = P.coeffs()
    return [
        sum(Fraction(p[i]) * math.comb(n - i + d - 1, d - 1) for i in range(min(n, len(p) - 1) + 1))
        for n in range(count)
    ]


@dataclass(frozen=True)
class RVReport:
    P: Poly
    d: int
    e: int
    tolerance: float
    P_roots: tuple
    unit_circle: bool
    H_roots: tuple
    predicted_integer_roots: tuple
    integer_roots_found: tuple
    middle_line: float
    on_middle_line: tuple
    unexplained_roots: tuple
    consistent: bool


def _roots(coeffs_low_first):
    c = [float(x) for x in coeffs_low_first]
    if len(c) <= 1:
        return np.array([], dtype=complex)
    roots = np.roots(c[::-1])
    if not np.all(np.isfinite(roots)):
        raise ArithmeticError("numeric root finding failed")
    return roots


def _monic(p):
    return p * (Fraction(1) / Fraction(p.leading_coeff()))


def _gcd(a, b):
    while b:
        a, b = b, poly_divrem(a, _monic(b))[1]
    return _monic(a)


def _derivative(p):
    return Poly({(e - 1,): e * c for (e,), c in p.items() if e}, 1)


def _roots_exact_multiplicity(p):
    """Roots with multiplicity; numerics only ever see squarefree polynomials."""
    if p.degree() <= 0:
        return []
    g = _gcd(p, _derivative(p))
    squarefree = poly_divrem(_monic(p), g)[0]
    simple = list(_roots(squarefree.coeffs()))
    # every root of g is a root of the squarefree part; repeat the nearest one
    return simple + [min(simple, key=lambda x: abs(x - r)) for r in _roots_exact_multiplicity(g)]


def rv_check(h, tolerance=1e-9):
    """Locate roots of P and H numerically and compare with the predicted pattern.

    When every root of P lies on the unit circle, H should vanish at the
    integers -1, ..., e + 1 - d and all its other roots should lie on the
    line Re s = (e - d) / 2.
    """
    P = rv_transform(h)
    d, e = h.d, P.degree()
    pr = _roots(P.coeffs())
    unit = bool(np.all(np.abs(np.abs(pr) - 1) <= tolerance)) if len(pr) else True
    hr = np.array(_roots_exact_multiplicity(h.H), dtype=complex)
    predicted = tuple(range(-1, e + 1 - d - 1, -1))
    middle = (e - d) / 2
    remaining = list(hr)
    found = []
    for k in predicted:
        idx = next((i for i, r in enumerate(remaining) if abs(r - k) <= max(tolerance, 1e-6)), None)
        if idx is not None:
            found.append(k)
            remaining.pop(idx)
    on_line = tuple(complex(r) for r in remaining if abs(r.real - middle) <= tolerance)
    rest = tuple(complex(r) for r in remaining if abs(r.real - middle) > tolerance)
    consistent = (not unit) or (len(found) == len(predicted) and not rest)
    return RVReport(P, d, e, tolerance, tuple(complex(r) for r in pr), unit,
                    tuple(complex(r) for r in hr), predicted, tuple(found), middle,
                    on_line, rest, consistent)


def functional_eq_check(H):
    """H(-1 - s) == (-1)^deg H * H(s), exactly."""
    s = Poly.var()
    flipped = H.compose([-1 - s])
    return flipped == H * (-1) ** max(H.degree(), 0)
