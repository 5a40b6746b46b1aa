"""Discrete Bessel and 2F1 kernels on the half-integer lattice."""

from .bessel import BesselKernel, bessel_kernel_entry, bessel_kernel_series, bessel_symbol_coeff
from .hypergeometric import (
    HypergeometricKernel,
    M2F1Row,
    h_plus,
    hyp_kernel_entry,
    hyp_m_row,
    hyp_symbol_coeff,
)
from .lattice import HALF, HalfInt, half_range
from .registry import Kernel, ZeroKernel, initial_truncation, kernel_for, prefactor, symbol_coeff
from .specs import Bessel, ExactComplex, Hypergeometric, KernelSpec, exact

__all__ = [
    "HALF",
    "Bessel",
    "BesselKernel",
    "ExactComplex",
    "HalfInt",
    "Hypergeometric",
    "HypergeometricKernel",
    "Kernel",
    "KernelSpec",
    "M2F1Row",
    "ZeroKernel",
    "bessel_kernel_entry",
    "bessel_kernel_series",
    "bessel_symbol_coeff",
    "exact",
    "h_plus",
    "half_range",
    "hyp_kernel_entry",
    "hyp_m_row",
    "hyp_symbol_coeff",
    "initial_truncation",
    "kernel_for",
    "prefactor",
    "symbol_coeff",
]
