"""Discrete 2F1 kernel on Z'_+ and the Toeplitz symbol of the z-measures.

The kernel is built from the first column (m11, m21) of the matrix m(zeta)
and the weight h_+:

    K(x, y) = h_+(x) h_+(y) (m21(x) m11(y) - m11(x) m21(y)) / (x - y)

with the diagonal obtained from d/dx of m11 and m21 by central differences.
Every 2F1 at argument xi/(xi - 1) goes through the Pfaff transformation.
For a conjugate pair z' = conj(z) the intermediate values are complex while
the kernel is real; the imaginary residue is checked and dropped.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..core.exceptions import DomainError, InvariantViolationError, PoleError
from ..numerics import (
    ArithContext,
    HPNumber,
    HPReal,
    gauss_2f1,
    gauss_2f1_pfaff,
    pochhammer,
)
from .bessel import order_step
from .lattice import HalfInt
from .specs import Hypergeometric

log = logging.getLogger(__name__)


def hyp_symbol_coeff(k: int, spec: Hypergeometric, ctx: ArithContext) -> HPNumber:
    """Fourier coefficient t_k of (1 - sqrt(xi) zeta)^z (1 - sqrt(xi)/zeta)^z'.

    The (1 + sqrt(xi) zeta) form of the symbol has coefficients (-1)^k t_k and
    the same Toeplitz determinants.
    """
    z, zp, xi = spec.values(ctx)
    mp = ctx.mp
    if k < 0:
        # Mirror image: swap (z, z') and k -> -k.
        z, zp, k = zp, z, -k
    ratio = pochhammer(-z, k, ctx) / mp.factorial(k)
    if ratio == 0:
        return ratio
    series = gauss_2f1(-z + k, -zp, k + 1, xi, ctx)
    return ctx.check(mp.power(xi, mp.mpf(k) / 2) * ratio * series, "t_k")


@dataclass(frozen=True, slots=True)
class M2F1Row:
    """Entries of m(zeta); m12 and m22 only when requested."""

    m11: HPNumber
    m21: HPNumber
    m12: HPNumber | None = None
    m22: HPNumber | None = None

    def det(self) -> HPNumber:
        if self.m12 is None or self.m22 is None:
            raise ValueError("determinant needs the full row (full=True)")
        return self.m11 * self.m22 - self.m12 * self.m21


def _zeta_value(zeta: HalfInt | HPNumber | int, ctx: ArithContext) -> HPNumber:
    if isinstance(zeta, HalfInt):
        return zeta.value(ctx)
    return ctx.convert(zeta)


def hyp_m_row(
    zeta: HalfInt | HPNumber | int,
    spec: Hypergeometric,
    ctx: ArithContext,
    full: bool = False,
) -> M2F1Row:
    z, zp, xi = spec.values(ctx)
    mp = ctx.mp
    zeta = _zeta_value(zeta, ctx)
    half = mp.mpf(0.5)
    if zeta + half == 0:
        raise PoleError("m(zeta) has a pole at zeta = -1/2")
    scale = mp.sqrt(z * zp * xi) / (1 - xi)
    m11 = gauss_2f1_pfaff(-z, -zp, zeta + half, xi, ctx)
    m21 = -scale * gauss_2f1_pfaff(1 - z, 1 - zp, zeta + 3 * half, xi, ctx) / (zeta + half)
    if not full:
        return M2F1Row(m11, m21)
    if half - zeta == 0:
        raise PoleError("m12 has a pole at zeta = 1/2")
    m12 = scale * gauss_2f1_pfaff(1 + z, 1 + zp, 3 * half - zeta, xi, ctx) / (half - zeta)
    m22 = gauss_2f1_pfaff(z, zp, half - zeta, xi, ctx)
    return M2F1Row(m11, m21, m12, m22)


def h_plus(x: HalfInt, spec: Hypergeometric, ctx: ArithContext) -> HPReal:
    """Weight h_+(x) for x in Z'_+."""
    if not x.is_positive:
        raise DomainError(f"h_+ is defined on Z'_+ only, got x={x}")
    z, zp, xi = spec.values(ctx)
    mp = ctx.mp
    n = x.n
    radicand = ctx.real_part(pochhammer(z + 1, n, ctx) * pochhammer(zp + 1, n, ctx), "h_+^2")
    if radicand <= 0:
        raise InvariantViolationError(f"(z+1)_n (z'+1)_n = {radicand} is not positive at x={x}")
    zzp = spec.zzp(ctx)
    power = ctx.real_part(mp.power(1 - xi, (z + zp) / 2), "(1-xi)^((z+z')/2)")
    value = (
        mp.root(zzp, 4)
        * mp.power(xi, x.value(ctx) / 2)
        * power
        * mp.sqrt(radicand)
        / mp.factorial(n)
    )
    return ctx.check(value, "h_+")


class HypergeometricKernel:
    """Entry evaluator for one spec, caching rows, derivatives and weights per x."""

    def __init__(self, spec: Hypergeometric, ctx: ArithContext) -> None:
        self.spec = spec
        self.ctx = ctx
        self._rows: dict[int, M2F1Row] = {}
        self._slopes: dict[int, M2F1Row] = {}
        self._h: dict[int, HPReal] = {}

    def row(self, x: HalfInt) -> M2F1Row:
        row = self._rows.get(x.n)
        if row is None:
            row = hyp_m_row(x, self.spec, self.ctx)
            self._rows[x.n] = row
        return row

    def slope(self, x: HalfInt) -> M2F1Row:
        """(dm11/dzeta, dm21/dzeta) at zeta = x."""
        slope = self._slopes.get(x.n)
        if slope is None:
            fine = self.ctx.boosted(self.ctx.precision_bits // 3)
            h = order_step(self.ctx)
            center = x.value(fine)
            hi = hyp_m_row(center + h, self.spec, fine)
            lo = hyp_m_row(center - h, self.spec, fine)
            slope = M2F1Row(
                self.ctx.convert((hi.m11 - lo.m11) / (2 * h)),
                self.ctx.convert((hi.m21 - lo.m21) / (2 * h)),
            )
            self._slopes[x.n] = slope
        return slope

    def h(self, x: HalfInt) -> HPReal:
        value = self._h.get(x.n)
        if value is None:
            value = h_plus(x, self.spec, self.ctx)
            self._h[x.n] = value
        return value

    def entry(self, x: HalfInt, y: HalfInt) -> HPReal:
        if not (x.is_positive and y.is_positive):
            raise DomainError(f"2F1 kernel is implemented on Z'_+ only, got ({x}, {y})")
        if x == y:
            return self.diagonal(x)
        rx, ry = self.row(x), self.row(y)
        numer = rx.m21 * ry.m11 - rx.m11 * ry.m21
        value = self.h(x) * self.h(y) * numer / (x.n - y.n)
        return self.ctx.real_part(value, "2F1 kernel")

    def diagonal(self, x: HalfInt) -> HPReal:
        if not x.is_positive:
            raise DomainError(f"2F1 kernel is implemented on Z'_+ only, got {x}")
        r, d = self.row(x), self.slope(x)
        value = self.h(x) ** 2 * (d.m21 * r.m11 - d.m11 * r.m21)
        return self.ctx.real_part(value, "2F1 kernel diagonal")


def hyp_kernel_entry(x: HalfInt, y: HalfInt, spec: Hypergeometric, ctx: ArithContext) -> HPReal:
    return HypergeometricKernel(spec, ctx).entry(x, y)
