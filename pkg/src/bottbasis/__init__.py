"""Exact computation of leaf decompositions of Bott-Samelson section spaces for SL(n)."""

__version__ = "0.1.0"

from .errors import BottBasisError, UndefinedLVectorError, UsageError  # noqa: E402
from .filtration import LVector, canonical_basis  # noqa: E402
from .lie_data import Weight, one_param_subgroup, weyl_dim  # noqa: E402

__all__ = [
    "BottBasisError",
    "LVector",
    "UndefinedLVectorError",
    "UsageError",
    "Weight",
    "__version__",
    "canonical_basis",
    "one_param_subgroup",
    "weyl_dim",
]
