"""Frozen expected values.

Each value was worked out by hand or by a computation independent of the
package (direct sums, long division, brute-force enumeration) and is kept
here as a literal so regressions show up as plain mismatches.
"""

from fractions import Fraction

# cyclotomic polynomials, coefficients from q^0 upwards
PHI = {
    1: [-1, 1],
    2: [1, 1],
    6: [1, -1, 1],
    12: [1, 0, -1, 0, 1],
    30: [1, 1, 0, -1, -1, -1, 0, 1, 1],
}
# Phi_105 is the first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
PHI105_Q7 = -2

# {3}_q! = (q^3 - 1)(q^2 - 1)(q - 1), expanded by hand
QFACT3 = [-1, 1, 1, 0, -1, -1, 1]

# Kontsevich-Zagier F(zeta) = sum_n prod_{j<=n} (1 - zeta^j): finite sums
# over n < order(zeta).  Values are (real, imaginary) parts.
KZ_VALUES = {
    (0, 1): (1, 0),
    (1, 2): (3, 0),
    (1, 4): (8, -3),
    # 1 + (1 - w) + (1 - w)(1 - w^2) = 5 - w for w = exp(2 pi i / 3)
    (1, 3): (5.5, -0.8660254037844386),
}
# F = 1 - (q-1) + 2 (q-1)^2 + O((q-1)^3), from x^2 (2 - x) with x = 1 - q
KZ_JET_AT_1 = [1, -1, 2]

# q^{-1} evaluated at i is -i
QINV_AT_I = (0, -1)

# Witt vectors, from the ghost recursion q_n = sum_{d | n} d u_d^{n/d}
WITT_GHOST_11 = [1, 3]
WITT_UNGHOST_222 = [2, -1, -2]
# [1] + [1] has ghost components (2, 2, 2, ...); first twelve Witt coordinates
TEICH_ONE_PLUS_ONE = [2, -1, -2, -4, -6, -12, -18, -40, -54, -120, -186, -396]

# number of maximal cones of the permutohedral fan and the torus-orbit count
# sum_cones (q - 1)^(rank - dim): Eulerian numbers
ORBIT_COUNTS = {
    1: [1],
    2: [1, 1],
    3: [1, 4, 1],
    4: [1, 11, 11, 1],
    5: [1, 26, 66, 26, 1],
}
# ordered set partitions of an n-set (Fubini numbers) = number of cones
FUBINI = {1: 1, 2: 3, 3: 13, 4: 75, 5: 541}

# Gaussian binomial [4 choose 2]_q
QBINOM_4_2 = [1, 1, 2, 1, 1]

# Hilbert polynomials and their numerators P(t)
RV_EXAMPLES = [
    # (coefficients of H from n^0, expected P from t^0)
    ([1, Fraction(3, 2), Fraction(1, 2)], [1]),  # (n+1)(n+2)/2, the plane
    ([1, 2, 1], [1, 1]),  # (n+1)^2, a quadric surface
    ([1], [1]),
    # cubic surface: H(n) = 1 + 3 n (n+1) / 2
    ([1, Fraction(3, 2), Fraction(3, 2)], [1, 1, 1]),
]

# profinite integers
PISANO = {1: 1, 2: 3, 3: 8, 4: 6, 5: 20, 7: 16, 8: 12, 10: 60, 24: 24, 100: 300}
FIB_10_MOD_24 = 7
KZ_PROFINITE_DEPTH4 = 20
