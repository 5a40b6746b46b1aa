"""Toeplitz and Fredholm determinant routes to gap probabilities."""

from .fredholm import (
    TruncationReport,
    fredholm_det,
    fredholm_gap,
    resolvent_det_diag,
    resolvent_diag,
)
from .linalg import det, leading_minors, solve
from .table import GapMethod, GapTable, gap_table
from .toeplitz import (
    precision_warning,
    required_bits,
    toeplitz_coefficients,
    toeplitz_gap,
    toeplitz_gaps,
)

__all__ = [
    "GapMethod",
    "GapTable",
    "TruncationReport",
    "det",
    "fredholm_det",
    "fredholm_gap",
    "gap_table",
    "leading_minors",
    "precision_warning",
    "required_bits",
    "resolvent_det_diag",
    "resolvent_diag",
    "solve",
    "toeplitz_coefficients",
    "toeplitz_gap",
    "toeplitz_gaps",
]
