"""Arbitrary-precision arithmetic contexts and special functions."""

from .context import ArithContext, HPComplex, HPNumber, HPReal, RealLike, ctx_new
from .special import (
    bessel_i,
    bessel_j,
    gauss_2f1,
    gauss_2f1_pfaff,
    log_gamma,
    pochhammer,
)

__all__ = [
    "ArithContext",
    "HPComplex",
    "HPNumber",
    "HPReal",
    "RealLike",
    "bessel_i",
    "bessel_j",
    "ctx_new",
    "gauss_2f1",
    "gauss_2f1_pfaff",
    "log_gamma",
    "pochhammer",
]
