"""Exact computations with finite inverse semigroups acting on split commutative algebras:
ESN groupoids, quotients, skew rings, and the subsemigroup/subalgebra correspondence."""

from .errors import InvalidStructure, ParseError, TheoremViolation, Unsupported
from .scalars import QQ, PrimeField

__version__ = "0.1.0"

__all__ = ["InvalidStructure", "ParseError", "TheoremViolation", "Unsupported",
           "QQ", "PrimeField", "__version__"]
