"""Three-dimensional evolution algebras: natural basis changes, invariants, classification and isomorphism."""

from .basis_change import BasisChange, NotANaturalChange, is_natural_change, transform
from .classifier3d import (
    CanonicalType,
    ClassificationGap,
    ClassificationResult,
    WrongDimensionClass,
    classify,
)
from .evolution_core import DimensionMismatch, InvariantProfile, multiply, profile
from .field import COMPLEX, RATIONAL, ParseError, RootUnavailable, evaluate, get_field
from .group_action import GroupElement, act
from .isomorphism import Decision, are_isomorphic, verify_witness

__version__ = "0.1.0"

__all__ = [
    "BasisChange", "NotANaturalChange", "is_natural_change", "transform",
    "CanonicalType", "ClassificationGap", "ClassificationResult", "WrongDimensionClass", "classify",
    "DimensionMismatch", "InvariantProfile", "multiply", "profile",
    "COMPLEX", "RATIONAL", "ParseError", "RootUnavailable", "evaluate", "get_field",
    "GroupElement", "act",
    "Decision", "are_isomorphic", "verify_witness",
]
