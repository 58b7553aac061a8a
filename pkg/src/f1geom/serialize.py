"""Text literals for every serializable value type, with seeded random samplers.

``LITERALS`` maps a type name to ``(format, parse, sample)``; ``sample``
takes a :class:`random.Random` so all randomness flows from one seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .counting import ZetaFactorization, parse_zeta
from .cyclotomic import RootOfUnity, parse_root
from .habiro import HabiroElement, habiro_reduce, parse_habiro
from .monoid_scheme import Cyclic, FreeAbelian, FreeMonoid, format_monoid, parse_monoid, toric_monoid_from_cone
from .profinite import embed, from_digits, parse_profinite
from .ring_core import CycloElem, Poly, parse_cyclo, parse_poly
from .toric_moduli import OrderedPartition, build_fan, parse_fan, parse_partition
from .witt import GhostVector, WittVector, p_typical_set, parse_ghost, parse_witt, truncation_set

__all__ = ["LITERALS", "roundtrip", "make_rng"]


def make_rng(seed):
    """The single documented generator: Python's Mersenne Twister seeded with ``seed``."""
    return random.Random(seed)


def _rational(rng, size=20, den=6):
    return Fraction(rng.randint(-size, size), rng.randint(1, den))


def random_poly(rng, nvars=None, max_deg=6, max_terms=6, rational=True):
    nvars = nvars or rng.choice([1, 1, 2, 3])
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exp = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        terms[exp] = _rational(rng) if rational and rng.random() < 0.3 else rng.randint(-9, 9)
    return Poly(terms, nvars)


def random_root(rng, max_order=24):
    m = rng.randint(1, max_order)
    ks = [k for k in range(m) if _gcd(k, m) == 1]
    return RootOfUnity(rng.choice(ks), m)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def random_cyclo(rng, max_conductor=16):
    m = rng.randint(1, max_conductor)
    return CycloElem(m, [_rational(rng) if rng.random() < 0.3 else rng.randint(-5, 5) for _ in range(m)])


def random_habiro(rng):
    n = rng.choice([1, 1, 2])
    depth = rng.randint(1, 5)
    return habiro_reduce(random_poly(rng, n, max_deg=12, rational=False), n, depth)


def random_witt(rng):
    if rng.random() < 0.6:
        S = truncation_set(rng.randint(1, 6))
    else:
        S = p_typical_set(rng.choice([2, 3, 5]), rng.randint(0, 3))
    coords = []
    for _ in S:
        r = rng.random()
        coords.append(random_cyclo(rng, 6) if r < 0.15 else (_rational(rng) if r < 0.5 else rng.randint(-9, 9)))
    return WittVector(S, tuple(coords))


def random_ghost(rng):
    w = random_witt(rng)
    return GhostVector(w.support, w.coords)


def random_partition(rng, labels="abcdefg"):
    B = rng.sample(list(labels), rng.randint(1, 5))
    rng.shuffle(B)
    cuts = sorted(rng.sample(range(1, len(B)), rng.randint(0, len(B) - 1))) if len(B) > 1 else []
    parts, prev = [], 0
    for c in cuts + [len(B)]:
        parts.append(frozenset(B[prev:c]))
        prev = c
    return OrderedPartition(tuple(parts))


def _random_unimodular(rng, d):
    rows = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(3 * d):
        i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
        if i != j:
            f = rng.randint(-2, 2)
            rows[i] = [a + f * b for a, b in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    return rows


def random_monoid(rng):
    kind = rng.randrange(4)
    if kind == 0:
        return FreeMonoid(rng.randint(0, 4))
    if kind == 1:
        return FreeAbelian(rng.randint(0, 4))
    if kind == 2:
        return Cyclic(rng.randint(1, 12))
    d = rng.randint(1, 4)
    basis = _random_unimodular(rng, d)
    return toric_monoid_from_cone(basis[: rng.randint(0, d)], d)


def random_profinite(rng):
    if rng.random() < 0.5:
        N = rng.randint(1, 10)
        return embed(rng.randint(-10**8, 10**8), N)
    N = rng.randint(1, 8)
    return from_digits([rng.randint(0, n) for n in range(1, N)])


def random_zeta(rng):
    factors = tuple((rng.randint(-3, 6), rng.randint(-3, 3)) for _ in range(rng.randint(0, 4)))
    return ZetaFactorization(rng.randint(-8, 8), factors)


def random_fan(rng):
    return build_fan("abcd"[: rng.randint(1, 4)])


LITERALS = {
    "poly": (Poly.format, parse_poly, random_poly),
    "root": (str, parse_root, random_root),
    "cyclo": (CycloElem.format, parse_cyclo, random_cyclo),
    "habiro": (HabiroElement.format, parse_habiro, random_habiro),
    "witt": (WittVector.format, parse_witt, random_witt),
    "ghost": (GhostVector.format, parse_ghost, random_ghost),
    "partition": (OrderedPartition.format, parse_partition, random_partition),
    "monoid": (format_monoid, parse_monoid, random_monoid),
    "profinite": (lambda x: x.format(), parse_profinite, random_profinite),
    "zeta": (ZetaFactorization.format, parse_zeta, random_zeta),
    "fan": (lambda f: f.format(), parse_fan, random_fan),
}


def roundtrip(kind, value):
    fmt, parse, _ = LITERALS[kind]
    return parse(fmt(value)) == value
