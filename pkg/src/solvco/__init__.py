"""Exact cohomology of solvable Lie algebras through their unipotent hulls."""

from .cdga import SolvModel
from .errors import MathError, ParseError, SolvcoError
from .lie import LieAlgebra, WeightVector, construct_ads, validate
from .scalar import ScalarValue, S

__all__ = [
    "LieAlgebra",
    "MathError",
    "ParseError",
    "S",
    "ScalarValue",
    "SolvModel",
    "SolvcoError",
    "WeightVector",
    "construct_ads",
    "validate",
]
