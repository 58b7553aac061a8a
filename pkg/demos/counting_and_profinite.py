"""Counting over F_1 and the arithmetic side: profinite integers and Fibonacci numbers."""

from fractions import Fraction

from f1geom.counting import HilbertData, gaussian_binomial, rv_check, zeta_f1
from f1geom.profinite import digits, embed, pisano, profinite_fibonacci
from f1geom.ring_core import Poly

q = Poly.var()
print("Grassmannian G(2,4) counts", gaussian_binomial(4, 2).format(), "points; at q = 1 that is",
      gaussian_binomial(4, 2)(1))
for count in (Poly.const(1), q - 1, 1 + q + q**2, gaussian_binomial(4, 2)):
    print(f"zeta of count {count.format():>28}: {zeta_f1(count).format()}")

print()
cubic = HilbertData(Poly.from_coeffs([1, Fraction(3, 2), Fraction(3, 2)]))
r = rv_check(cubic)
print("cubic surface: P(t) =", r.P.format(["t"]), " roots of H:", [f"{z:.6f}" for z in r.H_roots])

print()
for N in (4, 6, 8):
    print(f"-1 at depth {N} has factorial digits {digits(embed(-1, N))}")
print("pisano(8!) =", pisano(40320))
print("u_{-1} =", profinite_fibonacci(embed(-1, 8)).residue, " u_10 mod 8! =",
      profinite_fibonacci(embed(10, 8)).residue)
