"""Special functions by power series at arbitrary precision.

Bessel J (real order), Bessel I (integer order), the Gauss hypergeometric
function and its Pfaff-transformed evaluation. All series share one
summation loop: a run of ``SERIES_RUN_LENGTH`` consecutive terms below the
unit roundoff of the running sum ends it. Each series is summed in a
boosted context; if the ratio of the largest term to the final sum shows
more cancellation than the guard bits cover, the sum is redone with enough
extra bits and only then rounded back to the caller's context.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

from ..core.constants import GUARD_BITS, MAX_SERIES_TERMS, SERIES_RUN_LENGTH
from ..core.exceptions import (
    DomainError,
    NonConvergenceError,
    PoleError,
    PrecisionInsufficientError,
)
from .context import ArithContext, HPNumber, HPReal

log = logging.getLogger(__name__)

_MAX_BOOSTS = 4

type Ratio = Callable[[int], HPNumber]


def _sum_series(
    work: ArithContext,
    first: HPNumber,
    ratio: Ratio,
    terminates_at: int | None = None,
) -> tuple[HPNumber, HPReal]:
    """Sum first * prod ratio(j); return (sum, largest term magnitude)."""
    term = first
    total = first
    peak = abs(first)
    ulp = work.ulp
    quiet = 0
    for m in range(MAX_SERIES_TERMS):
        if terminates_at is not None and m >= terminates_at:
            return total, peak
        term = term * ratio(m)
        total += term
        size = abs(term)
        if size > peak:
            peak = size
        if size <= ulp * abs(total):
            quiet += 1
            if quiet >= SERIES_RUN_LENGTH:
                return total, peak
        else:
            quiet = 0
    raise NonConvergenceError(f"series did not converge within {MAX_SERIES_TERMS} terms")


def _summed(
    ctx: ArithContext,
    build: Callable[[ArithContext], tuple[HPNumber, Ratio]],
    terminates_at: int | None = None,
    hint_bits: int = 0,
    what: str = "series",
) -> HPNumber:
    """Sum a series in boosted contexts until cancellation is covered."""
    extra = GUARD_BITS + hint_bits
    for _ in range(_MAX_BOOSTS):
        work = ctx.boosted(extra)
        first, ratio = build(work)
        total, peak = _sum_series(work, first, ratio, terminates_at)
        if peak == 0:
            return ctx.convert(total)
        if total == 0:
            lost = extra * 2
        else:
            lost = max(0, int(work.mp.mag(peak)) - int(work.mp.mag(total)))
        if lost + GUARD_BITS // 2 <= extra:
            return ctx.check(ctx.convert(total), what)
        log.debug("%s lost %d bits at +%d guard; boosting", what, lost, extra)
        extra = lost + GUARD_BITS
    raise PrecisionInsufficientError(f"{what}: cancellation exceeds {extra} guard bits")


def _nonpositive_int(ctx: ArithContext, value: HPNumber) -> int | None:
    """Return -value when value is a nonpositive integer, else None."""
    mp = ctx.mp
    if mp.im(value) != 0:
        return None
    re = mp.re(value)
    if mp.isint(re) and re <= 0:
        return int(-re)
    return None


def log_gamma(x: HPNumber, ctx: ArithContext) -> HPNumber:
    """Principal branch of ln Gamma(x)."""
    x = ctx.convert(x)
    if _nonpositive_int(ctx, x) is not None:
        raise PoleError(f"log_gamma has a pole at {x}")
    return ctx.check(ctx.mp.loggamma(x), "log_gamma")


def pochhammer(a: HPNumber, k: int, ctx: ArithContext) -> HPNumber:
    """Rising factorial (a)_k as a direct k-term product."""
    if k < 0:
        raise DomainError(f"pochhammer needs k >= 0, got {k}")
    a = ctx.convert(a)
    result = ctx.mp.one
    for j in range(k):
        result *= a + j
    return result


def bessel_j(nu: HPNumber | int, u: HPNumber | int, ctx: ArithContext) -> HPReal:
    """Bessel J_nu(u) for real order nu and u >= 0."""
    mp = ctx.mp
    nu = ctx.convert(nu)
    u = ctx.convert(u)
    if u < 0:
        raise DomainError(f"bessel_j needs u >= 0, got {u}")
    if mp.isint(nu) and nu < 0:
        n = int(-nu)
        value = bessel_j(n, u, ctx)
        return -value if n % 2 else value
    if u == 0:
        if nu == 0:
            return mp.one
        if nu > 0:
            return mp.zero
        raise DomainError(f"bessel_j({nu}, 0) is infinite")

    def build(work: ArithContext) -> tuple[HPNumber, Ratio]:
        w = work.mp
        order = work.convert(nu)
        half = work.convert(u) / 2
        quarter = -(half * half)
        first = w.power(half, order) * w.rgamma(order + 1)
        return first, lambda m: quarter / ((m + 1) * (order + m + 1))

    # Alternating terms peak near e^u / sqrt(u) while J stays O(1).
    hint = math.ceil(float(u) / math.log(2))
    return _summed(ctx, build, hint_bits=hint, what=f"bessel_j({nu})")


def bessel_i(n: int, u: HPNumber | int, ctx: ArithContext) -> HPReal:
    """Modified Bessel I_n(u) for integer n and u >= 0; I_{-n} = I_n."""
    n = abs(int(n))
    mp = ctx.mp
    u = ctx.convert(u)
    if u < 0:
        raise DomainError(f"bessel_i needs u >= 0, got {u}")
    if u == 0:
        return mp.one if n == 0 else mp.zero

    def build(work: ArithContext) -> tuple[HPNumber, Ratio]:
        w = work.mp
        half = work.convert(u) / 2
        quarter = half * half
        first = w.power(half, n) / w.factorial(n)
        return first, lambda m: quarter / ((m + 1) * (n + m + 1))

    return _summed(ctx, build, what=f"bessel_i({n})")


def gauss_2f1(
    a: HPNumber, b: HPNumber, c: HPNumber, u: HPNumber, ctx: ArithContext
) -> HPNumber:
    """Gauss hypergeometric series F(a, b; c; u)."""
    a, b, c, u = (ctx.convert(v) for v in (a, b, c, u))
    stops = [n for n in (_nonpositive_int(ctx, a), _nonpositive_int(ctx, b)) if n is not None]
    terminates_at = min(stops) if stops else None
    c_pole = _nonpositive_int(ctx, c)
    if c_pole is not None and (terminates_at is None or terminates_at > c_pole):
        raise PoleError(f"2F1 c-parameter {c} is a pole of the series")
    if terminates_at is None and abs(u) >= 1:
        raise DomainError(f"2F1 series diverges at |u| = {ctx.mp.nstr(abs(u), 8)}")
    if u == 0 or terminates_at == 0:
        return ctx.mp.one

    def build(work: ArithContext) -> tuple[HPNumber, Ratio]:
        wa, wb, wc, wu = (work.convert(v) for v in (a, b, c, u))
        return work.mp.one, lambda m: (wa + m) * (wb + m) * wu / ((wc + m) * (m + 1))

    return _summed(ctx, build, terminates_at=terminates_at, what="2F1")


def gauss_2f1_pfaff(
    a: HPNumber, b: HPNumber, c: HPNumber, xi: HPNumber, ctx: ArithContext
) -> HPNumber:
    """F(a, b; c; xi/(xi-1)) evaluated as (1-xi)^a F(a, c-b; c; xi)."""
    a, b, c, xi = (ctx.convert(v) for v in (a, b, c, xi))
    if abs(xi) >= 1:
        raise DomainError("Pfaff evaluation needs |xi| < 1")
    if xi == 0:
        return ctx.mp.one
    prefactor = ctx.mp.power(1 - xi, a)
    return ctx.check(prefactor * gauss_2f1(a, c - b, c, xi, ctx), "2F1 (Pfaff)")
