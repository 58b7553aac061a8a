"""Acceptance criteria 1 to 12.

Each test computes a single verdict, prints one ``CRITERION n PASS|FAIL`` line
with its runtime (visible even without ``-s``) and then asserts the verdict.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from oracles import KZ_JET_AT_1, TEICH_ONE_PLUS_ONE
from f1geom.cli import run
from f1geom.counting import HilbertData, ZetaFactorization, gaussian_binomial, rv_check, rv_transform, zeta_f1
from f1geom.cyclotomic import RootOfUnity, cyclotomic_poly
from f1geom.habiro import (
    HabiroElement,
    habiro_eval,
    habiro_q_inverse,
    habiro_reduce,
    habiro_taylor,
    kontsevich_zagier,
    kz_radial_limit,
)
from f1geom.monoid_scheme import Cyclic, FreeMonoid, MonomialMatrix, gl_points, int_det, spec
from f1geom.profinite import digits, embed, fibonacci, pisano, profinite_fibonacci
from f1geom.ring_core import CycloElem, Poly
from f1geom.serialize import LITERALS, make_rng
from f1geom.toric_moduli import build_fan, fan_checks, orbit_count_poly
from f1geom.witt import GhostVector, WittVector, ghost, inverse_ghost, teichmuller, truncation_set, witt_ring_op

q = Poly.var()
ONE, MINUS_ONE, I = RootOfUnity(0, 1), RootOfUnity(1, 2), RootOfUnity(1, 4)


@pytest.fixture
def verdict(capsys):
    start = time.perf_counter()

    def report(number, title, ok):
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\nCRITERION {number:2d} {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s)")
        assert ok
        return elapsed

    return report


def test_01_cyclotomic_identity(verdict):
    start = time.perf_counter()
    ok = True
    for n in range(1, 301):
        prod = Poly.const(1)
        for d in range(1, n + 1):
            if n % d == 0:
                prod = prod * cyclotomic_poly(d)
        ok = ok and prod == q**n - 1
    ok = ok and time.perf_counter() - start < 5
    verdict(1, "prod_{d|n} Phi_d = q^n - 1 for n <= 300 in under 5 s", ok)


def test_02_habiro_inverse(verdict):
    ok = all(HabiroElement.var(0, 1, N) * habiro_q_inverse(N) == HabiroElement.const(1, 1, N)
             for N in range(1, 13))
    verdict(2, "q * q^-1 = 1 at every depth N <= 12", ok)


def test_03_kz_values(verdict):
    i = CycloElem.root(1, 4)
    expected = {ONE: 1, MINUS_ONE: 3, I: 8 - 3 * i}
    ok = True
    for z, value in expected.items():
        for N in range(z.m, z.m + 5):
            ok = ok and habiro_eval(kontsevich_zagier(N), (z,)) == value
    verdict(3, "F(1) = 1, F(-1) = 3, F(i) = 8 - 3i stable from N0 to N0 + 4", ok)


def test_04_taylor_well_defined(verdict):
    # a jet of order k keeps the coefficients of (q - zeta)^0 .. (q - zeta)^k
    ok = True
    M = 7
    for z in (ONE, MINUS_ONE, I):
        N0 = M * z.m
        jets = [habiro_taylor(kontsevich_zagier(N), (z,), M) for N in range(N0, N0 + 4)]
        ok = ok and all(j == jets[0] for j in jets)
    jet = habiro_taylor(kontsevich_zagier(3), (ONE,), 3)
    ok = ok and [jet[j] for j in range(3)] == KZ_JET_AT_1
    ok = ok and jet.format() == "1 - (q-1) + 2*(q-1)^2"
    verdict(4, "order-6 jets of F at 1, -1, i agree over N0..N0+3; order-2 jet at 1", ok)


def test_05_radial_limit(verdict):
    start = time.perf_counter()
    estimate = kz_radial_limit(MINUS_ONE)
    elapsed = time.perf_counter() - start
    ok = abs(abs(estimate) - 3) < 1e-2 and abs(estimate - 3) < 1e-2 and elapsed < 1
    verdict(5, f"extrapolated radial limit at -1 = {estimate.real:.6f} within 1e-2 of 3 in under 1 s", ok)


def test_06_witt(verdict):
    rng = random.Random(6)
    S = truncation_set(12)
    ok = True
    for _ in range(200):
        w = WittVector.of([Fraction(rng.randint(-99, 99), rng.randint(1, 20)) for _ in S])
        g = GhostVector(S, tuple(Fraction(rng.randint(-99, 99), rng.randint(1, 20)) for _ in S))
        ok = ok and inverse_ghost(ghost(w)) == w and ghost(inverse_ghost(g)) == g
    for _ in range(200):
        x = WittVector.of([rng.randint(-20, 20) for _ in S])
        y = WittVector.of([rng.randint(-20, 20) for _ in S])
        ok = ok and witt_ring_op("add", x, y).is_integral and witt_ring_op("mul", x, y).is_integral
    one = teichmuller(1, S)
    ok = ok and list(witt_ring_op("add", one, one).coords) == TEICH_ONE_PLUS_ONE
    verdict(6, "ghost roundtrip on 200 rational vectors, integrality on 200 pairs, [1] + [1]", ok)


def test_07_fans(verdict):
    ok = True
    timings = {}
    for n in range(1, 6):
        start = time.perf_counter()
        fan = build_fan("abcde"[:n])
        r = fan_checks(fan, samples=10_000, seed=n)
        ok = ok and r.is_fan and r.smooth and r.complete and r.hits == 10_000
        ok = ok and r.maximal_cones == math.factorial(n)
        ok = ok and all(abs(int_det(list(g))) == 1 for _, g in fan.maximal_cones() if g)
        timings[n] = time.perf_counter() - start
    count = orbit_count_poly(build_fan("abc"))
    ok = ok and count == q**2 + 4 * q + 1 and count(1) == 6
    ok = ok and timings[5] < 30
    verdict(7, f"fans for |B| <= 5, orbit count of F_3 = q^2 + 4q + 1, |B| = 5 in {timings[5]:.1f} s", ok)


def test_08_counting(verdict):
    ok = gaussian_binomial(4, 2)(1) == 6
    ok = ok and zeta_f1(1 + q + q**2) == ZetaFactorization(-3, ((0, 1), (1, 1), (2, 1)))
    plane = Poly.from_coeffs([1, Fraction(3, 2), Fraction(1, 2)])
    quadric = Poly.from_coeffs([1, 2, 1])
    cubic = Poly.from_coeffs([1, Fraction(3, 2), Fraction(3, 2)])
    ok = ok and rv_transform(HilbertData(plane)).coeffs() == [1]
    ok = ok and rv_transform(HilbertData(quadric)).coeffs() == [1, 1]
    roots = rv_check(HilbertData(cubic), 1e-9).H_roots
    ok = ok and len(roots) == 2 and all(abs(z.real + 0.5) < 1e-9 for z in roots)
    verdict(8, "[4 2]_1 = 6, zeta of P^2, P = 1 and 1 + t, cubic surface roots on Re = -1/2", ok)


def _group_axioms(pts):
    table = set(pts)
    e = MonomialMatrix.identity(2, 2)
    if e not in table:
        return False
    for g in pts:
        if g @ e != g or e @ g != g or g @ g.inverse() != e or g.inverse() not in table:
            return False
        for h in pts:
            if g @ h not in table:
                return False
            for k in pts:
                if (g @ h) @ k != g @ (h @ k):
                    return False
    return True


def test_09_monoid_schemes(verdict):
    ok = len(spec(FreeMonoid(1)).points) == 2 and len(spec(FreeMonoid(2)).points) == 4
    ok = ok and all(len(spec(Cyclic(n)).points) == 1 for n in range(1, 13))
    pts = gl_points(2, Cyclic(2))
    ok = ok and len(pts) == 8 and _group_axioms(pts)
    verdict(9, "|spec N| = 2, |spec N^2| = 4, |spec Z/n| = 1, GL(2)(Z/2) is a group of order 8", ok)


def test_10_profinite(verdict):
    ok = all(digits(embed(-1, N)) == list(range(1, N)) for N in range(2, 11))
    ok = ok and embed(1 + sum((-1) ** n * math.factorial(n) for n in range(1, 10)), 4).residue == 20
    M = math.factorial(8)
    a, b = 0, 1
    for n in range(10**4 + 1):
        ok = ok and profinite_fibonacci(embed(n, 8)).residue == a % M
        a, b = b, a + b
    rng = random.Random(10)
    for _ in range(50):
        N = rng.randint(1, 8)
        x = rng.randint(-10**6, 10**6)
        y = x + math.factorial(N) * rng.randint(-10**6, 10**6)
        fx, fy = profinite_fibonacci(embed(x, N)), profinite_fibonacci(embed(y, N))
        ok = ok and fx == fy and fx.residue == fibonacci(x % pisano(fx.modulus), fx.modulus)
    ok = ok and pisano(10) == 60
    verdict(10, "digits of -1, 1 + sum (-1)^n n! = 20 mod 24, Fibonacci n <= 1e4, continuity, pi(10) = 60", ok)


def _separation_family(N):
    F = kontsevich_zagier(N)
    family = [F, habiro_q_inverse(N), F * F - 1, F * habiro_q_inverse(N)]
    family += [habiro_reduce(q**k, 1, N) for k in range(0, 40)]
    family += [habiro_reduce(q**k - 1, 1, N) for k in range(1, 40, 2)]
    family += [habiro_reduce(cyclotomic_poly(n), 1, N) for n in range(1, 40)]
    family += [habiro_reduce((q - 1) ** a * (q + 1) ** b, 1, N) for a in range(6) for b in range(6)]
    family += [family[i] * family[j] for i, j in ((0, 5), (1, 45), (2, 60), (3, 80))]
    return family


def test_11_separatedness(verdict):
    N = 32
    roots = [RootOfUnity(k, 2**e) for e in range(6) for k in range(2**e) if math.gcd(k, 2**e) == 1]
    ok = True
    checked = 0
    for f in _separation_family(N):
        if f.is_zero():
            continue
        checked += 1
        ok = ok and any(not habiro_eval(f, (z,)).is_zero() for z in roots)
    verdict(11, f"{checked} nonzero elements at depth 32 each nonzero at a 2-power root of order <= 32", ok)


def test_12_cli(verdict):
    ok = True
    for kind, (fmt, parse, sample) in LITERALS.items():
        rng = make_rng(f"acceptance:{kind}")
        for _ in range(1000):
            value = sample(rng)
            ok = ok and parse(fmt(value)) == value
    for argv in (["selftest", "all", "--seed", "12"],
                 ["moduli", "check", "a,b,c", "--samples", "2000", "--seed", "12"],
                 ["habiro", "taylor", "--depth", "12", "--order", "3", "kz", "zeta(1/4)"]):
        first = run(argv)
        ok = ok and first[0] == 0 and run(argv) == first
    verdict(12, "1000-sample print/parse roundtrip per literal type, byte-identical reruns", ok)
