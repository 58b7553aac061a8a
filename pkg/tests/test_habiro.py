import math
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import KZ_JET_AT_1, KZ_VALUES, QINV_AT_I
from f1geom.cyclotomic import RootOfUnity, q_factorial
from f1geom.errors import InsufficientDepthError, ParseError, PreconditionError
from f1geom.habiro import (
    HabiroElement,
    HabiroSeries,
    coproduct,
    counit,
    from_series,
    habiro_alpha,
    habiro_eval,
    habiro_q_inverse,
    habiro_reduce,
    habiro_taylor,
    kontsevich_zagier,
    kz_radial_limit,
    monoid_completion_ideal,
    parse_habiro,
    required_depth,
    zagier_radial,
)
from f1geom.monoid_scheme import Cyclic, FreeAbelian
from f1geom.ring_core import CycloElem, Poly, poly_divrem

q = Poly.var()
ONE, MINUS_ONE, I = RootOfUnity(0, 1), RootOfUnity(1, 2), RootOfUnity(1, 4)


def int_polys(nvars=1, max_deg=14):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.dictionaries(exps, st.integers(-9, 9), max_size=6).map(lambda d: Poly(d, nvars))


def kz_direct(z):
    # sum_n prod_{j<=n} (1 - z^j); terms with n >= order(z) vanish
    total, prod = 0, 1
    for n in range(50):
        total += prod
        prod *= 1 - z ** (n + 1)
    return total


def test_reduce_examples():
    for N in range(1, 6):
        assert habiro_reduce(q_factorial(N), 1, N).is_zero()
    assert habiro_reduce(q, 1, 2).rep == q
    expected = poly_divrem(q**3, (q**2 - 1) * (q - 1))[1]
    assert habiro_reduce(q**3, 1, 2).rep == expected


def test_reduce_two_variables():
    q1, q2 = Poly.var(0, 2), Poly.var(1, 2)
    f = habiro_reduce(q1**5 * q2**4 + q2**3, 2, 2)
    assert all(e < 3 for exp in f.rep.terms for e in exp)


@settings(max_examples=60)
@given(int_polys(2, 12), st.integers(2, 5), st.integers(1, 4))
def test_restriction_compatible(p, N, drop):
    M = max(1, N - drop)
    assert habiro_reduce(p, 2, N).restrict(M) == habiro_reduce(p, 2, M)


def test_ring_ops():
    x = habiro_reduce(q**4 + 3, 1, 3)
    assert x + HabiroElement.const(0, 1, 3) == x
    assert (1 - HabiroElement.var(0, 1, 2)) * (1 + HabiroElement.var(0, 1, 2)) == habiro_reduce(1 - q**2, 1, 2)
    assert (x - x).is_zero()
    # mixed depths meet at the smaller one
    assert (x + habiro_reduce(q, 1, 2)).depth == 2


def test_q_inverse_all_depths():
    for N in range(1, 13):
        assert HabiroElement.var(0, 1, N) * habiro_q_inverse(N) == HabiroElement.const(1, 1, N)


def test_q_inverse_values():
    value = habiro_eval(habiro_q_inverse(8), (I,))
    assert (value.to_complex().real, value.to_complex().imag) == pytest.approx(QINV_AT_I)
    assert habiro_eval(habiro_q_inverse(3), (ONE,)) == 1


def test_q_inverse_series_matches():
    for N in range(1, 8):
        assert from_series(HabiroSeries.q_inverse(N + 2), N) == habiro_q_inverse(N)


def test_from_series_constant():
    assert from_series(HabiroSeries((1,)), 5) == HabiroElement.const(1, 1, 5)


def test_normalized_series_degree_bound():
    with pytest.raises(ValueError):
        HabiroSeries((1, q**2), normalized=True)


@pytest.mark.parametrize("km", sorted(KZ_VALUES))
def test_kz_anchored_values(km):
    z = RootOfUnity(*km)
    expected = complex(*KZ_VALUES[km])
    for N in range(z.m, z.m + 5):
        value = habiro_eval(kontsevich_zagier(N), (z,))
        assert value == habiro_eval(kontsevich_zagier(z.m), (z,))
        assert abs(value.to_complex() - expected) < 1e-12


def test_kz_exact_values():
    assert habiro_eval(kontsevich_zagier(4), (ONE,)) == 1
    assert habiro_eval(kontsevich_zagier(4), (MINUS_ONE,)) == 3
    assert habiro_eval(kontsevich_zagier(4), (I,)) == CycloElem(4, [8, -3])


@pytest.mark.parametrize("m", range(1, 13))
def test_kz_matches_direct_sum(m):
    f = kontsevich_zagier(m + 2)
    for k in range(m):
        if math.gcd(k, m) == 1:
            z = RootOfUnity(k, m)
            assert abs(habiro_eval(f, (z,)).to_complex() - kz_direct(z.to_complex())) < 1e-9


def test_insufficient_depth():
    with pytest.raises(InsufficientDepthError) as exc:
        habiro_eval(kontsevich_zagier(2), (I,))
    assert exc.value.required == 4
    assert "depth >= 4" in str(exc.value)
    with pytest.raises(InsufficientDepthError):
        habiro_taylor(kontsevich_zagier(5), (MINUS_ONE,), 3)


def test_jets_at_one():
    f = kontsevich_zagier(12)
    jet3 = habiro_taylor(f, (ONE,), 3)
    assert [jet3[j] for j in range(3)] == KZ_JET_AT_1
    assert jet3.format() == "1 - (q-1) + 2*(q-1)^2"
    jet2 = habiro_taylor(f, (ONE,), 2)
    assert [jet2[0], jet2[1]] == KZ_JET_AT_1[:2]


def _exact_jet(f, c, order):
    # expand the representative around the rational point c by substitution
    x = Poly.var()
    shifted = f.rep.compose([x + c])
    return [shifted.coeff((j,)) for j in range(order)]


@pytest.mark.parametrize("z,c", [(ONE, 1), (MINUS_ONE, -1)])
def test_jets_match_substitution(z, c):
    M = 6
    for N in range(required_depth((z,), M), required_depth((z,), M) + 4):
        f = kontsevich_zagier(N)
        jet = habiro_taylor(f, (z,), M)
        assert [jet[j] for j in range(M)] == _exact_jet(f, c, M)


def _gaussian_jet(rep, order):
    # coefficients of sum c q^e around q = i, as Gaussian integers
    powers = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    out = []
    for j in range(order):
        re = im = 0
        for (e,), c in rep.items():
            if e >= j:
                a, b = powers[(e - j) % 4]
                w = c * math.comb(e, j)
                re, im = re + w * a, im + w * b
        out.append(CycloElem(4, [re, im]))
    return out


def test_jet_at_i_stable_and_exact():
    M = 6
    N0 = required_depth((I,), M)
    jets = [habiro_taylor(kontsevich_zagier(N), (I,), M) for N in range(N0, N0 + 4)]
    assert all(j == jets[0] for j in jets)
    assert [jets[0][j] for j in range(M)] == _gaussian_jet(kontsevich_zagier(N0).rep, M)


@settings(max_examples=40)
@given(int_polys(1, 16), st.integers(1, 3), st.integers(0, 3))
def test_jet_independent_of_representative(p, M, k):
    N = 2 * M
    f = habiro_reduce(p, 1, N)
    g = HabiroElement(1, N, p + q_factorial(N) * q**k)
    assert habiro_taylor(f, (MINUS_ONE,), M) == habiro_taylor(g, (MINUS_ONE,), M)


def test_order_one_jet_is_value():
    f = habiro_reduce(q**7 - 3 * q + 2, 1, 6)
    for z in (ONE, MINUS_ONE, RootOfUnity(1, 3), RootOfUnity(5, 6)):
        assert habiro_taylor(f, (z,), 1)[0] == habiro_eval(f, (z,))


@settings(max_examples=40)
@given(int_polys(), int_polys(), st.sampled_from([ONE, MINUS_ONE, I, RootOfUnity(1, 3), RootOfUnity(1, 6)]))
def test_evaluation_is_ring_map(a, b, z):
    x, y = habiro_reduce(a, 1, 6), habiro_reduce(b, 1, 6)
    assert habiro_eval(x * y, (z,)) == habiro_eval(x, (z,)) * habiro_eval(y, (z,))
    assert habiro_eval(x + y, (z,)) == habiro_eval(x, (z,)) + habiro_eval(y, (z,))


def test_two_variable_evaluation():
    q1, q2 = Poly.var(0, 2), Poly.var(1, 2)
    f = habiro_reduce(q1 * q2 + q1**3, 2, 6)
    v = habiro_eval(f, (I, RootOfUnity(1, 3)))
    z1, z2 = I.to_complex(), RootOfUnity(1, 3).to_complex()
    assert v.conductor == 12
    assert abs(v.to_complex() - (z1 * z2 + z1**3)) < 1e-12


def test_alpha_examples():
    q1, q2 = Poly.var(0, 2), Poly.var(1, 2)
    a = habiro_alpha(habiro_reduce(q2, 2, 4), ONE, 2)
    assert a == [HabiroElement.const(1, 1, 4), HabiroElement.const(1, 1, 4)]
    a = habiro_alpha(habiro_reduce(q1 * q2, 2, 4), ONE, 2)
    assert a == [HabiroElement.var(0, 1, 4), HabiroElement.var(0, 1, 4)]
    with pytest.raises(PreconditionError):
        habiro_alpha(habiro_reduce(q1 * q2, 2, 8), I, 2)


def test_alpha_recombines():
    q1, q2 = Poly.var(0, 2), Poly.var(1, 2)
    f = habiro_reduce(q1**2 * q2**3 - 2 * q2 + q1, 2, 8)
    parts = habiro_alpha(f, MINUS_ONE, 4)
    total = sum((p.rep.embed(2, [0]) * (q2 + 1) ** j for j, p in enumerate(parts)), Poly.const(0, 2))
    assert habiro_reduce(total, 2, 8) == f


def test_coproduct():
    x = HabiroElement.var(0, 1, 4)
    assert coproduct(x) == habiro_reduce(Poly.var(0, 2) * Poly.var(1, 2), 2, 4)
    f = kontsevich_zagier(12)
    assert counit(coproduct(f), 1) == f
    pts = [ONE, MINUS_ONE, RootOfUnity(1, 3), I, RootOfUnity(1, 6)]
    for a in pts:
        for b in pts:
            ab = a * b
            assert habiro_eval(coproduct(f), (a, b)) == habiro_eval(f, (ab,))


def test_monoid_completion_ideal():
    assert monoid_completion_ideal(FreeAbelian(1), depth=3) == [q_factorial(3)]
    q1, q2 = Poly.var(0, 2), Poly.var(1, 2)
    assert monoid_completion_ideal(FreeAbelian(2), depth=2) == [
        (q1**2 - 1) * (q1 - 1), (q2**2 - 1) * (q2 - 1)]
    (g,) = monoid_completion_ideal(Cyclic(2), depth=2)
    assert g == (q - 1) * (q**2 - 1)
    assert poly_divrem(g, q**2 - 1)[1].is_zero()


def test_radial_series_at_zero():
    assert zagier_radial(MINUS_ONE, [0.0]) == [0.5]
    with pytest.raises(PreconditionError):
        zagier_radial(ONE, [1.0])


def test_radial_limit_at_minus_one():
    start = time.perf_counter()
    estimate = kz_radial_limit(MINUS_ONE)
    assert time.perf_counter() - start < 1
    assert abs(abs(estimate) - 3) < 1e-2
    assert abs(estimate - 3) < 1e-6


@pytest.mark.parametrize("z", [ONE, I, RootOfUnity(1, 3), RootOfUnity(1, 5)])
def test_radial_limit_matches_exact(z):
    exact = habiro_eval(kontsevich_zagier(z.m), (z,)).to_complex()
    assert abs(kz_radial_limit(z) - exact) < 1e-2


def test_parse_and_format():
    f = kontsevich_zagier(3)
    assert parse_habiro(f.format()) == f
    assert parse_habiro("kz", 5) == kontsevich_zagier(5)
    assert parse_habiro("qinv", 4) == habiro_q_inverse(4)
    assert parse_habiro("q^7", 2) == habiro_reduce(q**7, 1, 2)
    with pytest.raises(ParseError):
        parse_habiro("kz")
    with pytest.raises(ParseError):
        parse_habiro("{n=1, N=0, rep=q}")
    with pytest.raises(ParseError):
        parse_habiro("{n=1, N=2, rep=q/2}")
