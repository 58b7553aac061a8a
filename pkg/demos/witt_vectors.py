"""Big Witt vectors through their ghost components.

Addition and multiplication of Witt vectors are computed componentwise on
ghost components and transported back; integral inputs give integral outputs.
"""

from f1geom.ring_core import CycloElem
from f1geom.witt import WittVector, ghost, is_cyclotomic_point, teichmuller, truncation_set

S = truncation_set(12)
one = teichmuller(1, S)
two = one + one
print("[1] + [1] =", two.format())
print("ghost components:", [str(c) for c in ghost(two).comps])

x = WittVector.of([1, -2, 3, 0, 5, 1])
y = WittVector.of([2, 1, -1, 4, 0, -3])
print()
print("x     =", x.format())
print("y     =", y.format())
print("x + y =", (x + y).format())
print("x * y =", (x * y).format())

# Teichmuller lifts of roots of unity have ghost components that are again roots of unity
z = CycloElem.root(1, 6)
t = teichmuller(z, truncation_set(6))
print()
print("ghost components of [zeta_6]:", [c.format() for c in ghost(t).comps])
print("cyclotomic point:", is_cyclotomic_point(t))
