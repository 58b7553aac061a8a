import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import TEICH_ONE_PLUS_ONE, WITT_GHOST_11, WITT_UNGHOST_222
from f1geom.errors import IntegralityError, ParseError
from f1geom.ring_core import CycloElem, Poly
from f1geom.witt import (
    GhostVector,
    WittVector,
    frobenius_lift_check,
    ghost,
    ghost_frobenius,
    ghost_verschiebung,
    inverse_ghost,
    is_cyclotomic_point,
    p_typical_set,
    parse_coefficient,
    parse_ghost,
    parse_witt,
    restrict,
    teichmuller,
    truncation_set,
    witt_ring_op,
)

S12 = truncation_set(12)


def int_witt(N):
    return st.lists(st.integers(-6, 6), min_size=N, max_size=N).map(lambda c: WittVector.of(c))


def rational_witt(N):
    return st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=N, max_size=N).map(
        lambda c: WittVector.of(c))


def ghost_by_hand(coords):
    # q_n = sum_{d | n} d u_d^{n/d}, written out directly
    N = len(coords)
    return [sum(d * coords[d - 1] ** (n // d) for d in range(1, n + 1) if n % d == 0) for n in range(1, N + 1)]


def test_ghost_examples():
    assert list(ghost(WittVector.of([1, 1])).comps) == WITT_GHOST_11
    assert ghost(WittVector.zero(S12)) == GhostVector(S12, (0,) * 12)


def test_inverse_ghost_examples():
    assert list(inverse_ghost(GhostVector((1, 2, 3), (2, 2, 2))).coords) == WITT_UNGHOST_222
    r = Fraction(3, 5)
    assert inverse_ghost(GhostVector((1, 2, 3), (r, r**2, r**3))) == WittVector.of([r, 0, 0])
    assert inverse_ghost(GhostVector(S12, (0,) * 12)) == WittVector.zero(S12)


def test_teichmuller_sum():
    one = teichmuller(1, S12)
    assert list(witt_ring_op("add", one, one).coords) == TEICH_ONE_PLUS_ONE
    assert ghost_by_hand(TEICH_ONE_PLUS_ONE) == [2] * 12


def test_roundtrip_200_rational_vectors():
    rng = random.Random(11)
    for _ in range(200):
        w = WittVector.of([Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in S12])
        assert inverse_ghost(ghost(w)) == w
        g = GhostVector(S12, tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in S12))
        assert ghost(inverse_ghost(g)) == g


@given(rational_witt(8))
def test_ghost_matches_hand_formula(w):
    assert list(ghost(w).comps) == ghost_by_hand(list(w.coords))


def test_integrality_200_pairs():
    rng = random.Random(5)
    for _ in range(200):
        x = WittVector.of([rng.randint(-9, 9) for _ in range(10)])
        y = WittVector.of([rng.randint(-9, 9) for _ in range(10)])
        assert witt_ring_op("add", x, y).is_integral
        assert witt_ring_op("mul", x, y).is_integral


@settings(max_examples=50)
@given(int_witt(6), int_witt(6), int_witt(6))
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + WittVector.zero(x.support) == x


@settings(max_examples=50)
@given(int_witt(6))
def test_teichmuller_one_is_identity(x):
    assert x * teichmuller(1, x.support) == x


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_teichmuller_multiplicative(a, b):
    S = truncation_set(6)
    assert teichmuller(a, S) * teichmuller(b, S) == teichmuller(a * b, S)
    assert teichmuller(0, S) == WittVector.zero(S)


def test_rational_inputs_skip_integrality_check():
    x = WittVector.of([Fraction(1, 2), 0])
    assert not witt_ring_op("add", x, x).is_integral


def test_integrality_guard(monkeypatch):
    # the ghost components (1, 2) do not come from an integral vector
    assert not inverse_ghost(GhostVector((1, 2), (1, 2))).is_integral
    from f1geom import witt

    monkeypatch.setattr(witt, "inverse_ghost", lambda g: WittVector(g.support, (Fraction(1, 2),) * len(g.support)))
    with pytest.raises(IntegralityError):
        witt_ring_op("add", WittVector.of([1, 0]), WittVector.of([1, 0]))


def test_truncation_mismatch():
    with pytest.raises(ValueError):
        witt_ring_op("add", WittVector.of([1]), WittVector.of([1, 2]))
    with pytest.raises(ValueError):
        WittVector((1, 4), (1, 1))


def test_cyclotomic_teichmuller():
    z3 = CycloElem.root(1, 3)
    t = teichmuller(z3, truncation_set(4))
    assert list(ghost(t).comps) == [z3, z3**2, 1, z3]
    assert is_cyclotomic_point(t)
    assert not is_cyclotomic_point(WittVector.of([1, 1]))
    assert is_cyclotomic_point(WittVector.zero(S12))


def test_cyclotomic_roundtrip():
    i = CycloElem.root(1, 4)
    w = WittVector.of([i, 1 + i, 3, i * 2])
    assert inverse_ghost(ghost(w)) == w


@settings(max_examples=40)
@given(int_witt(12), st.sampled_from([2, 3, 5]))
def test_frobenius_and_verschiebung_keep_integrality(w, m):
    g = ghost(w)
    assert inverse_ghost(ghost_frobenius(g, m)).is_integral
    assert inverse_ghost(ghost_verschiebung(g, m)).is_integral


@given(int_witt(12))
def test_frobenius_verschiebung_relation(w):
    # F_p V_p = p on ghost components
    g = ghost(w)
    fv = ghost_frobenius(ghost_verschiebung(g, 2), 2)
    assert fv.comps == tuple(2 * g[n] for n in fv.support)


@settings(max_examples=50)
@given(int_witt(8), int_witt(8))
def test_p_typical_restriction_is_ring_map(x, y):
    S = p_typical_set(2, 3)
    assert restrict(x + y, S) == restrict(x, S) + restrict(y, S)
    assert restrict(x * y, S) == restrict(x, S) * restrict(y, S)


def test_frobenius_lift_checks():
    ints = range(-100, 101)
    for p in (2, 3, 5, 7, 11, 13):
        r = frobenius_lift_check("integers", p, "identity", ints)
        assert r.literal_holds and r.standard_holds
    rng = random.Random(3)
    polys = [Poly.from_coeffs([rng.randint(-9, 9) for _ in range(6)]) for _ in range(30)]
    for p in (2, 3, 5):
        r = frobenius_lift_check("polynomials", p, "q->q^p", polys)
        assert r.standard_holds
        assert not r.literal_holds
    with pytest.raises(ValueError):
        frobenius_lift_check("integers", 2, "q->q^p", ints)


def test_literals():
    assert WittVector.of([2, -1, -2]).format() == "witt{N=3}[2,-1,-2]"
    assert parse_witt("witt{p=2,k=2}[1,0,3]") == WittVector((1, 2, 4), (1, 0, 3))
    assert parse_ghost("ghost{N=2}[1,3]") == GhostVector((1, 2), (1, 3))
    assert parse_coefficient("zeta(1/3)") == CycloElem.root(1, 3)
    assert parse_coefficient("-3/4") == Fraction(-3, 4)
    for bad in ("witt{N=3}[1,2]", "witt{p=4,k=1}[1,1]", "witt{N=2}[1,x]", "ghost{N=1}[1]x"):
        with pytest.raises(ParseError):
            parse_witt(bad) if bad.startswith("witt") else parse_ghost(bad)
