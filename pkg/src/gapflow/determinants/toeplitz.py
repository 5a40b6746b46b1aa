"""Toeplitz determinant route to D_{k+1/2}.

D_{k+1/2} = prefactor * det[c_{i-j}]_{i,j<k} with c_m the Fourier coefficients
of the model symbol and the prefactor e^(-eta^2) or (1-xi)^(z z').
"""

from __future__ import annotations

import logging
import math

from ..core.exceptions import ValidationError
from ..kernels import Bessel, KernelSpec, prefactor, symbol_coeff
from ..numerics import ArithContext, HPNumber, HPReal
from .linalg import det, leading_minors

log = logging.getLogger(__name__)


def toeplitz_coefficients(spec: KernelSpec, k: int, ctx: ArithContext) -> dict[int, HPNumber]:
    """Symbol coefficients c_m for |m| < k (Bessel symbols are even)."""
    coeffs: dict[int, HPNumber] = {}
    for m in range(0, k):
        coeffs[m] = symbol_coeff(spec, m, ctx)
        if m:
            coeffs[-m] = coeffs[m] if isinstance(spec, Bessel) else symbol_coeff(spec, -m, ctx)
    return coeffs


def toeplitz_matrix(coeffs: dict[int, HPNumber], k: int) -> list[list[HPNumber]]:
    return [[coeffs[i - j] for j in range(k)] for i in range(k)]


def _as_gap(spec: KernelSpec, value: HPNumber, ctx: ArithContext) -> HPReal:
    return ctx.real_part(prefactor(spec, ctx) * value, f"Toeplitz D for {spec.name}")


def toeplitz_gap(spec: KernelSpec, k: int, ctx: ArithContext) -> HPReal:
    """D_{k+1/2} from one k x k Toeplitz determinant (LU with partial pivoting)."""
    if k < 0:
        raise ValidationError(f"k must be >= 0, got {k}")
    coeffs = toeplitz_coefficients(spec, k, ctx)
    return _as_gap(spec, det(toeplitz_matrix(coeffs, k), ctx), ctx)


def toeplitz_gaps(spec: KernelSpec, k_max: int, ctx: ArithContext) -> list[HPReal]:
    """D_{k+1/2} for k = 0..k_max from the leading minors of one matrix."""
    if k_max < 0:
        raise ValidationError(f"k_max must be >= 0, got {k_max}")
    coeffs = toeplitz_coefficients(spec, k_max, ctx)
    # No pivoting: every leading minor is a gap probability times a positive prefactor.
    minors = leading_minors(toeplitz_matrix(coeffs, k_max), ctx)
    return [_as_gap(spec, minor, ctx) for minor in minors]


def required_bits(spec: KernelSpec, k: int) -> int | None:
    """Precision the Bessel Toeplitz route needs at size k; None for 2F1 symbols."""
    if not isinstance(spec, Bessel):
        return None
    return math.ceil(2 * float(spec.eta) * k / math.log(2)) + 128


def precision_warning(spec: KernelSpec, k: int, ctx: ArithContext) -> str | None:
    """Log and return a warning when precision is below the guidance for size k."""
    needed = required_bits(spec, k)
    if needed is None or ctx.precision_bits >= needed:
        return None
    message = (
        f"precision {ctx.precision_bits} bits is below the {needed} bits suggested "
        f"for Bessel Toeplitz determinants at eta={spec.describe()['eta']}, k={k}"
    )
    log.warning(message)
    return message
