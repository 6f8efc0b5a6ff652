"""Achirality and commensurability of Sol 3-manifolds via binary quadratic forms."""
from .errors import BoxInstabilityError, ConsistencyError, DomainError
from .mat2 import Mat2, parse_matrix
from .qform import QForm

__version__ = "0.1.0"

__all__ = [
    "BoxInstabilityError",
    "ConsistencyError",
    "DomainError",
    "Mat2",
    "QForm",
    "parse_matrix",
]
