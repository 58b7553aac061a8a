"""Exact computations for geometry over the field with one element.

Cyclotomic polynomials and roots of unity, truncated Habiro rings,
big Witt vectors, monoid schemes, the permutohedral moduli fans,
F_1 point counting and profinite integers.
"""

from .counting import ZetaFactorization, gaussian_binomial, rv_check, rv_transform, zeta_f1
from .cyclotomic import RootOfUnity, adjacent, cyclotomic_poly, q_factorial
from .errors import F1Error, InsufficientDepthError, IntegralityError, ParseError, PreconditionError
from .habiro import HabiroElement, habiro_eval, habiro_q_inverse, habiro_taylor, kontsevich_zagier
from .monoid_scheme import Cyclic, FreeAbelian, FreeMonoid, base_change, gl_points, spec
from .profinite import ProfiniteInt, embed, pisano, profinite_fibonacci
from .ring_core import CycloElem, Poly, parse_poly
from .toric_moduli import OrderedPartition, build_fan, fan_checks
from .witt import GhostVector, WittVector, ghost, inverse_ghost, witt_ring_op

__version__ = "0.1.0"

__all__ = [
    "ZetaFactorization",
    "gaussian_binomial",
    "rv_check",
    "rv_transform",
    "zeta_f1",
    "RootOfUnity",
    "adjacent",
    "cyclotomic_poly",
    "q_factorial",
    "F1Error",
    "InsufficientDepthError",
    "IntegralityError",
    "ParseError",
    "PreconditionError",
    "HabiroElement",
    "habiro_eval",
    "habiro_q_inverse",
    "habiro_taylor",
    "kontsevich_zagier",
    "Cyclic",
    "FreeAbelian",
    "FreeMonoid",
    "base_change",
    "gl_points",
    "spec",
    "ProfiniteInt",
    "embed",
    "pisano",
    "profinite_fibonacci",
    "CycloElem",
    "Poly",
    "parse_poly",
    "OrderedPartition",
    "build_fan",
    "fan_checks",
    "GhostVector",
    "WittVector",
    "ghost",
    "inverse_ghost",
    "witt_ring_op",
]
