"""Cyclotomic polynomials, q-factorials and Habiro's adjacency on roots of unity."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ParseError, PreconditionError
from .ring_core import CycloElem, Poly, _phi_dense

__all__ = [
    "RootOfUnity",
    "FiniteList",
    "AllOrdersIn",
    "PrimePowerOrders",
    "AllPrimeOrders",
    "cyclotomic_poly",
    "q_int",
    "q_factorial",
    "adjacent",
    "is_limit_point",
    "prime_power_base",
    "parse_root",
]


def prime_power_base(n):
    """Return p if n = p^k with k >= 1, 1 if n == 1, else None."""
    if n == 1:
        return 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
        p += 1
    return n


def _is_prime(n):
    return n >= 2 and prime_power_base(n) == n


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The root e^{2 pi i k/m}, kept as the reduced fraction k/m with 0 <= k < m."""

    k: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"order must be positive, got {self.m}")
        if not 0 <= self.k < self.m or math.gcd(self.k, self.m) != 1:
            raise ValueError(f"zeta({self.k}/{self.m}) is not in reduced form")

    @classmethod
    def from_fraction(cls, frac):
        frac = Fraction(frac) % 1
        return cls(frac.numerator, frac.denominator)

    @classmethod
    def one(cls):
        return cls(0, 1)

    @property
    def order(self):
        return self.m

    @property
    def fraction(self):
        return Fraction(self.k, self.m)

    def __mul__(self, other):
        return RootOfUnity.from_fraction(self.fraction + other.fraction)

    def inverse(self):
        return RootOfUnity.from_fraction(-self.fraction)

    def __pow__(self, e):
        return RootOfUnity.from_fraction(self.fraction * e)

    def galois(self, a):
        """Image under z -> z^a (an automorphism when gcd(a, m) = 1)."""
        return RootOfUnity.from_fraction(self.fraction * a)

    def to_cyclo(self):
        return CycloElem.root(self.k, self.m)

    def to_complex(self):
        return complex(math.cos(2 * math.pi * self.k / self.m), math.sin(2 * math.pi * self.k / self.m))

    def __str__(self):
        return f"zeta({self.k}/{self.m})"


_ROOT_RE = re.compile(r"\s*zeta\(\s*(-?\d+)\s*/\s*(\d+)\s*\)\s*")


def parse_root(text):
    m = _ROOT_RE.fullmatch(text)
    if not m:
        raise ParseError("malformed root of unity literal", text)
    k, n = int(m.group(1)), int(m.group(2))
    try:
        return RootOfUnity(k, n)
    except ValueError as exc:
        raise ParseError(str(exc), text) from None


# root set descriptions --------------------------------------------------------


@dataclass(frozen=True)
class FiniteList:
    roots: tuple

    def __post_init__(self):
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("FiniteList entries must be pairwise distinct")


@dataclass(frozen=True)
class AllOrdersIn:
    """All roots whose order lies in a finite set of positive integers."""

    orders: frozenset


@dataclass(frozen=True)
class PrimePowerOrders:
    """All roots of order p^k, k >= 0."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


@dataclass(frozen=True)
class AllPrimeOrders:
    """All roots of prime order."""


# polynomials ------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Phi_n, by exact division of q^n - 1 by the Phi_d for proper divisors d."""
    if n < 1:
        raise PreconditionError(f"cyclotomic_poly needs n >= 1, got {n}")
    return Poly.from_coeffs(_phi_dense(n))


def q_int(n):
    """The q-integer {n}_q = q^n - 1."""
    return Poly.from_coeffs([-1] + [0] * (n - 1) + [1]) if n else Poly.const(0)


@lru_cache(maxsize=None)
def q_factorial(n, nvars=1, var=0):
    """{n}_q! = (q^n - 1)...(q - 1) in variable ``var`` of an ``nvars``-variable ring."""
    if n < 0:
        raise PreconditionError("q_factorial needs n >= 0")
    if n == 0:
        out = Poly.const(1)
    else:
        out = q_factorial(n - 1) * q_int(n)
    if nvars == 1:
        return out
    return out.embed(nvars, [var])


# adjacency --------------------------------------------------------------------


def adjacent(xi, eta):
    """Habiro adjacency: xi/eta has order 1 or a prime power."""
    return prime_power_base((xi.fraction - eta.fraction).denominator) is not None


def is_limit_point(xi, s):
    """Whether infinitely many members of ``s`` are adjacent to ``xi``.

    Finite descriptions never have limit points.  For a root of order
    p^k with k large, the ratio with xi has order (m / p-part of m) * p^k,
    so PrimePowerOrders(p) accumulates exactly at roots whose order is a
    power of p.  A prime-order root of order l not dividing m gives a
    ratio of order m*l, a prime power only when m = 1.
    """
    if isinstance(s, (FiniteList, AllOrdersIn)):
        return False
    m = xi.m
    if isinstance(s, PrimePowerOrders):
        while m % s.p == 0:
            m //= s.p
        return m == 1
    if isinstance(s, AllPrimeOrders):
        return m == 1
    raise TypeError(f"unsupported root set description {s!r}")
