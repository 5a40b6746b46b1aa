"""Discrete Bessel kernel and its Toeplitz symbol.

K(x, y) = eta (J_{x-1/2} J_{y+1/2} - J_{y-1/2} J_{x+1/2}) / (x - y) on Z' x Z',
all Bessel functions at argument 2*eta. On the diagonal the quotient is
replaced by its limit, which needs the derivative of J in the order; that
derivative is a central difference with step 2^(-precision_bits/3).
"""

from __future__ import annotations

import logging

from ..core.constants import SERIES_RUN_LENGTH
from ..numerics import ArithContext, HPNumber, HPReal, bessel_i, bessel_j
from .lattice import HalfInt

log = logging.getLogger(__name__)


def bessel_symbol_coeff(m: int, eta: HPNumber | int, ctx: ArithContext) -> HPReal:
    """Fourier coefficient f_m = I_|m|(2 eta) of exp(eta (zeta + 1/zeta))."""
    return bessel_i(abs(m), 2 * ctx.convert(eta), ctx)


def order_step(ctx: ArithContext) -> HPReal:
    """Finite-difference step 2^(-precision_bits/3)."""
    return ctx.mp.ldexp(ctx.mp.one, -(ctx.precision_bits // 3))


class BesselKernel:
    """Entry evaluator for one eta with per-instance caches of J and dJ/dnu.

    Lattice point x = n + 1/2 needs J_n and J_{n+1}, so values are cached by
    integer order. Instances may be shared between threads: a cache miss only
    ever stores the value another thread would have stored.
    """

    def __init__(self, eta: HPNumber | int, ctx: ArithContext) -> None:
        self.ctx = ctx
        self.eta = ctx.convert(eta)
        self.arg = 2 * self.eta
        self._j: dict[int, HPReal] = {}
        self._dj: dict[int, HPReal] = {}

    def j(self, n: int) -> HPReal:
        value = self._j.get(n)
        if value is None:
            value = bessel_j(n, self.arg, self.ctx)
            self._j[n] = value
        return value

    def dj(self, n: int) -> HPReal:
        """d/dnu J_nu(2 eta) at nu = n by central difference."""
        value = self._dj.get(n)
        if value is None:
            # Extra bits keep the difference quotient from eating the target precision.
            fine = self.ctx.boosted(self.ctx.precision_bits // 3)
            h = order_step(self.ctx)
            arg = fine.convert(self.arg)
            hi = bessel_j(fine.mp.mpf(n) + h, arg, fine)
            lo = bessel_j(fine.mp.mpf(n) - h, arg, fine)
            value = self.ctx.convert((hi - lo) / (2 * h))
            self._dj[n] = value
        return value

    def entry(self, x: HalfInt, y: HalfInt) -> HPReal:
        if x == y:
            return self.diagonal(x)
        a, b = x.n, y.n
        numer = self.j(a) * self.j(b + 1) - self.j(b) * self.j(a + 1)
        return self.ctx.check(self.eta * numer / (a - b), "Bessel kernel")

    def diagonal(self, x: HalfInt) -> HPReal:
        a = x.n
        value = self.eta * (self.dj(a) * self.j(a + 1) - self.j(a) * self.dj(a + 1))
        return self.ctx.check(value, "Bessel kernel diagonal")


def bessel_kernel_entry(x: HalfInt, y: HalfInt, eta: HPNumber | int, ctx: ArithContext) -> HPReal:
    return BesselKernel(eta, ctx).entry(x, y)


def bessel_kernel_series(x: HalfInt, y: HalfInt, eta: HPNumber | int, ctx: ArithContext) -> HPReal:
    """Summation form K(x, y) = sum over m in Z'_+ of J_{x+m} J_{y+m}.

    Independent of the order derivative, so it cross-checks the diagonal.
    """
    kernel = BesselKernel(eta, ctx)
    total = ctx.mp.zero
    quiet = 0
    j = 0
    while quiet < SERIES_RUN_LENGTH:
        # m = j + 1/2, so x + m has integer order x.n + j + 1
        term = kernel.j(x.n + j + 1) * kernel.j(y.n + j + 1)
        total += term
        quiet = quiet + 1 if abs(term) <= ctx.ulp * abs(total) else 0
        j += 1
    return total
