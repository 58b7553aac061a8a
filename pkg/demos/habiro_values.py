"""The Kontsevich-Zagier element F = sum_n (1-q)(1-q^2)...(1-q^n) in the Habiro ring.

F diverges as a power series everywhere inside the unit disc, yet it has an
exact value and a full Taylor expansion at every root of unity.  Run with
``python demos/habiro_values.py``.
"""

from f1geom.cyclotomic import RootOfUnity
from f1geom.habiro import habiro_eval, habiro_q_inverse, habiro_taylor, kontsevich_zagier, kz_radial_limit

for z in (RootOfUnity(0, 1), RootOfUnity(1, 2), RootOfUnity(1, 3), RootOfUnity(1, 4), RootOfUnity(1, 8)):
    # evaluation only needs the truncation modulo {N}_q! with N at least the order of z
    values = {habiro_eval(kontsevich_zagier(N), (z,)).format() for N in range(z.m, z.m + 4)}
    (value,) = values
    print(f"F({z}) = {value}")

print()
for z in (RootOfUnity(0, 1), RootOfUnity(1, 2)):
    jet = habiro_taylor(kontsevich_zagier(4 * z.m), (z,), 4)
    print(f"Taylor jet of F at {z}: {jet.format()}")

print()
z = RootOfUnity(1, 2)
estimate = kz_radial_limit(z)
print(f"radial limit of the half theta series at -1, extrapolated: {estimate.real:.8f}")
print(f"exact value:                                             {habiro_eval(kontsevich_zagier(2), (z,)).format()}")

print()
print("q^-1 at depth 4:", habiro_q_inverse(4).format())
