"""Independent checks on G_n(w): abelianization and coset enumeration."""

from .coset import EnumerationOutcome, enumerate_cosets, todd_coxeter
from .resultant import circulant_resultant, exponent_polynomial, resultant
from .snf import (
    INFINITE,
    IntMatrix,
    SNFResult,
    abelian_order,
    exponent_matrix,
    smith_normal_form,
)

__all__ = [
    "INFINITE",
    "EnumerationOutcome",
    "IntMatrix",
    "SNFResult",
    "abelian_order",
    "circulant_resultant",
    "enumerate_cosets",
    "exponent_matrix",
    "exponent_polynomial",
    "resultant",
    "smith_normal_form",
    "todd_coxeter",
]
