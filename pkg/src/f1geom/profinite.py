"""Profinite integers truncated modulo N!, Pisano periods and profinite Fibonacci numbers."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParseError, PreconditionError

__all__ = [
    "ProfiniteInt",
    "DEFAULT_DEPTH",
    "embed",
    "digits",
    "from_digits",
    "profinite_arith",
    "pisano",
    "fibonacci",
    "profinite_fibonacci",
    "factorize",
    "parse_profinite",
]

DEFAULT_DEPTH = 10


@dataclass(frozen=True)
class ProfiniteInt:
    """Image of a profinite integer in Z/(N!)."""

    depth: int
    residue: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if not 0 <= self.residue < math.factorial(self.depth):
            raise ValueError(f"residue must lie in [0, {self.depth}!)")

    @property
    def modulus(self):
        return math.factorial(self.depth)

    def restrict(self, depth):
        if depth > self.depth:
            raise PreconditionError(f"cannot raise depth from {self.depth} to {depth}")
        return ProfiniteInt(depth, self.residue % math.factorial(depth))

    def __add__(self, other):
        return profinite_arith("add", self, other)

    def __mul__(self, other):
        return profinite_arith("mul", self, other)

    def __neg__(self):
        return ProfiniteInt(self.depth, -self.residue % self.modulus)

    def format(self):
        return f"pf{{N={self.depth}}}:{self.residue}"

    __str__ = format


def embed(a, depth=DEFAULT_DEPTH):
    return ProfiniteInt(depth, a % math.factorial(depth))


def digits(x):
    """Factorial-base digits c_1 .. c_{N-1} with 0 <= c_n <= n and sum c_n n! = residue."""
    r, out = x.residue, []
    for n in range(1, x.depth):
        r, c = divmod(r, n + 1)
        out.append(c)
    return out


def from_digits(cs):
    """Inverse of :func:`digits`; depth is len(cs) + 1."""
    total = 0
    for n, c in enumerate(cs, start=1):
        if not 0 <= c <= n:
            raise ValueError(f"digit c_{n} = {c} outside [0, {n}]")
        total += c * math.factorial(n)
    return ProfiniteInt(len(cs) + 1, total)


def profinite_arith(op, x, y):
    N = min(x.depth, y.depth)
    a, b = x.restrict(N).residue, y.restrict(N).residue
    if op == "add":
        v = a + b
    elif op == "mul":
        v = a * b
    elif op == "sub":
        v = a - b
    else:
        raise ValueError(f"unknown operation {op!r}")
    return ProfiniteInt(N, v % math.factorial(N))


# Fibonacci --------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pisano_brute(m):
    if m == 1:
        return 1
    a, b, n = 0, 1, 0
    while True:
        a, b = b, (a + b) % m
        n += 1
        if a == 0 and b == 1:
            return n


def factorize(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def pisano(m):
    """Period of the Fibonacci sequence modulo m: lcm of brute-force prime-power periods."""
    if m < 1:
        raise PreconditionError("modulus must be >= 1")
    return math.lcm(1, *(_pisano_brute(p**k) for p, k in factorize(m).items()))


def _mat_mul(a, b, m):
    return (
        ((a[0][0] * b[0][0] + a[0][1] * b[1][0]) % m, (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % m),
        ((a[1][0] * b[0][0] + a[1][1] * b[1][0]) % m, (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % m),
    )


def fibonacci(n, m=None):
    """u_n (mod m if given) via powers of [[1, 1], [1, 0]]; n >= 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    mod = m if m is not None else 0
    result, base = ((1, 0), (0, 1)), ((1, 1), (1, 0))
    while n:
        if n & 1:
            result = _mat_mul(result, base, mod) if mod else _mul_exact(result, base)
        n >>= 1
        if n:
            base = _mat_mul(base, base, mod) if mod else _mul_exact(base, base)
    return result[0][1]


def _mul_exact(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def profinite_fibonacci(x):
    """u_x at the largest depth N' <= N with pisano(N'!) dividing N!.

    The residue of x mod N! fixes x mod pisano(N'!) only when that period divides N!.
    This holds with N' = N from depth 4 on; depths 2 and 3 drop to 1 and 2.
    """
    M = x.modulus
    depth = x.depth
    while M % pisano(math.factorial(depth)):
        depth -= 1
    Md = math.factorial(depth)
    return ProfiniteInt(depth, fibonacci(x.residue % pisano(Md), Md))


# text -------------------------------------------------------------------------


def parse_profinite(text):
    text = text.strip()
    m = re.fullmatch(r"pf\{N=(\d+)\}:(-?\d+)", text)
    if m:
        N = int(m.group(1))
        if N < 1:
            raise ParseError("depth must be positive", m.group(1))
        return embed(int(m.group(2)), N)
    m = re.fullmatch(r"pf\[([0-9,\s]*)\]", text)
    if m:
        body = m.group(1).strip()
        cs = [int(c) for c in body.split(",")] if body else []
        try:
            return from_digits(cs)
        except ValueError as exc:
            raise ParseError(str(exc), text) from None
    raise ParseError("malformed profinite literal", text)
