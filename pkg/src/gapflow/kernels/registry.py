"""Dispatch from a KernelSpec to its kernel evaluator, symbol and prefactor."""

from __future__ import annotations

from typing import Protocol

from ..core.constants import BESSEL_TRUNCATION_PAD, HYP_INITIAL_TRUNCATION
from ..numerics import ArithContext, HPNumber, HPReal
from .bessel import BesselKernel, bessel_symbol_coeff
from .hypergeometric import HypergeometricKernel, hyp_symbol_coeff
from .lattice import HalfInt
from .specs import Bessel, Hypergeometric, KernelSpec


class Kernel(Protocol):
    """Entry-wise access to a correlation kernel on the lattice."""

    ctx: ArithContext

    def entry(self, x: HalfInt, y: HalfInt) -> HPReal: ...

    def diagonal(self, x: HalfInt) -> HPReal: ...


class ZeroKernel:
    """The kernel that vanishes identically (the xi -> 0 limit of the 2F1 kernel)."""

    def __init__(self, ctx: ArithContext) -> None:
        self.ctx = ctx

    def entry(self, x: HalfInt, y: HalfInt) -> HPReal:
        return self.ctx.mp.zero

    def diagonal(self, x: HalfInt) -> HPReal:
        return self.ctx.mp.zero


def kernel_for(spec: KernelSpec, ctx: ArithContext) -> Kernel:
    match spec:
        case Bessel():
            return BesselKernel(spec.eta_value(ctx), ctx)
        case Hypergeometric():
            return HypergeometricKernel(spec, ctx)
    raise TypeError(f"unknown kernel spec: {spec!r}")


def symbol_coeff(spec: KernelSpec, m: int, ctx: ArithContext) -> HPNumber:
    """m-th Fourier coefficient of the model's Toeplitz symbol."""
    match spec:
        case Bessel():
            return bessel_symbol_coeff(m, spec.eta_value(ctx), ctx)
        case Hypergeometric():
            return hyp_symbol_coeff(m, spec, ctx)
    raise TypeError(f"unknown kernel spec: {spec!r}")


def prefactor(spec: KernelSpec, ctx: ArithContext) -> HPReal:
    """D_{1/2}: e^(-eta^2) for Bessel, (1 - xi)^(z z') for Hypergeometric."""
    mp = ctx.mp
    match spec:
        case Bessel():
            eta = spec.eta_value(ctx)
            return mp.exp(-eta * eta)
        case Hypergeometric():
            return mp.power(1 - ctx.real(spec.xi), spec.zzp(ctx))
    raise TypeError(f"unknown kernel spec: {spec!r}")


def initial_truncation(spec: KernelSpec, ctx: ArithContext) -> int:
    """Starting Fredholm window size before doubling."""
    match spec:
        case Bessel():
            mp = ctx.mp
            return int(mp.ceil(2 * mp.e * spec.eta_value(ctx))) + BESSEL_TRUNCATION_PAD
        case Hypergeometric():
            return HYP_INITIAL_TRUNCATION
    raise TypeError(f"unknown kernel spec: {spec!r}")
