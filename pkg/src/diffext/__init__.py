"""Central extensions of matrix groups over differential fields, computed exactly."""

from .errors import (
    ArityMismatch,
    DiffExtError,
    DivisionByZero,
    IncompatibleExtension,
    ModuleMismatch,
    NotInP,
    NotInSL2,
    NotInvertible,
    ParseError,
    ShapeError,
)
from .field import Derivation, Field, RatFunc, derivations_independent, derive

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "Derivation",
    "DiffExtError",
    "DivisionByZero",
    "Field",
    "IncompatibleExtension",
    "ModuleMismatch",
    "NotInP",
    "NotInSL2",
    "NotInvertible",
    "ParseError",
    "RatFunc",
    "ShapeError",
    "derivations_independent",
    "derive",
]
