"""Trend checks for the two scaling limits of the recurrences.

- dPV -> dPII: z = z' = N, xi = eta^2 / N^2, N -> infinity; the dPV state
  approaches the dPII quantities and q_k approaches p_k.
- dPII -> PII: s = 2 eta + eta^(1/3) t, eta -> infinity; the rescaled orbit
  approaches a solution of v'' = t v + 2 v^3.

Neither limit is an identity at finite scale. Every function here returns
deviations that should shrink along the scale list; deciding whether they
do is left to the caller.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..core.constants import PII_MAX_DOUBLINGS, PII_PRECISION_PER_STEP
from ..core.exceptions import PrecisionInsufficientError, ValidationError
from ..core.workers import WorkerPool
from ..determinants import toeplitz_gaps
from ..kernels import HalfInt, Hypergeometric
from ..numerics import ArithContext, HPReal
from .dp2 import bessel_spec, dp2_orbit
from .dp5 import dp5_orbit

log = logging.getLogger(__name__)

DEGENERATION_S_MAX = HalfInt(4)  # s = 1/2 .. 9/2
DEGENERATION_K_MAX = 6


@dataclass(frozen=True, slots=True)
class DegenerationRow:
    """Deviations of the dPV data at z = z' = N from their dPII limits."""

    n: int
    alpha: HPReal  # max_s |xi^(1/2) alpha_s - v_{s-1}/v_s|
    b: HPReal  # max_s |b_s + z + eta v_{s-1} v_s|
    beta: HPReal  # max_s |beta_{s+1}/beta_s - 1/(1 - v_s^2)|
    gap: HPReal  # max_{k<=6} |q_k - p_k|

    def columns(self) -> dict[str, HPReal]:
        return {"alpha": self.alpha, "b": self.b, "beta": self.beta, "gap": self.gap}


def meixner_spec(eta: Fraction, n: int) -> Hypergeometric:
    """z = z' = N, xi = eta^2 / N^2 (exact)."""
    if n < 1:
        raise ValidationError(f"N must be a positive integer, got {n}")
    return Hypergeometric.of(n, n, eta * eta / (n * n))


def dp5_to_dp2_row(eta: Any, n: int, ctx: ArithContext) -> DegenerationRow:
    bessel = bessel_spec(eta)
    spec = meixner_spec(bessel.eta, n)
    mp = ctx.mp
    value = bessel.eta_value(ctx)
    z, _, xi = spec.values(ctx)
    root_xi = mp.sqrt(xi)

    s_max = DEGENERATION_S_MAX
    states = dp5_orbit(spec, s_max + 1, ctx)
    xs = dp2_orbit(bessel, s_max.n + 1, ctx)

    alpha_dev = b_dev = beta_dev = mp.zero
    for state, nxt in zip(states, states[1:], strict=False):
        v_prev, v = xs[state.s.n], xs[state.s.n + 1]
        alpha_dev = max(alpha_dev, abs(root_xi * state.alpha - v_prev / v))
        b_dev = max(b_dev, abs(state.b + z + value * v_prev * v))
        beta_dev = max(beta_dev, abs(nxt.beta / state.beta - 1 / (1 - v * v)))

    q = toeplitz_gaps(spec, DEGENERATION_K_MAX, ctx)
    p = toeplitz_gaps(bessel, DEGENERATION_K_MAX, ctx)
    gap_dev = max(abs(a - b) for a, b in zip(q, p, strict=True))
    log.debug("dPV->dPII at N=%d: alpha %s, b %s", n, mp.nstr(alpha_dev, 5), mp.nstr(b_dev, 5))
    return DegenerationRow(
        n,
        ctx.real_part(alpha_dev),
        ctx.real_part(b_dev),
        ctx.real_part(beta_dev),
        gap_dev,
    )


def dp5_to_dp2_check(
    eta: Any,
    n_list: Sequence[int],
    ctx: ArithContext,
    pool: WorkerPool | None = None,
) -> list[DegenerationRow]:
    """One DegenerationRow per N, in the order given."""
    if not n_list:
        raise ValidationError("N list is empty")
    pool = pool or WorkerPool(1)
    return pool.map(lambda n: dp5_to_dp2_row(eta, n, ctx), n_list, label="dpv-to-dpii")


# dPII -> PII


@dataclass(frozen=True, slots=True)
class PIIResidual:
    """Scaled dPII data at the lattice point nearest to s = 2 eta + eta^(1/3) t."""

    t: HPReal
    s: HalfInt
    v: HPReal  # (-1)^(s+1/2) eta^(1/3) v_s
    residual: HPReal  # |v'' - t v - 2 v^3| with a centred second difference
    log_gap: HPReal  # |(ln D)'' + v^2| with the same difference


def _lattice_points(eta: Any, t_grid: Sequence[Any], ctx: ArithContext) -> list[tuple[HPReal, int]]:
    """(t, n) with s = n + 1/2 the lattice point nearest to 2 eta + eta^(1/3) t."""
    mp = ctx.mp
    value = bessel_spec(eta).eta_value(ctx)
    scale = mp.cbrt(value)
    points = []
    for t in t_grid:
        t_value = ctx.convert(t)
        n = int(mp.floor(2 * value + scale * t_value))
        if n < 1:
            raise ValidationError(f"t={t} falls below the lattice (2 eta + eta^(1/3) t < 1)")
        points.append((t_value, n))
    return points


def _profile(eta: Any, t_grid: Sequence[Any], ctx: ArithContext) -> list[PIIResidual]:
    spec = bessel_spec(eta)
    mp = ctx.mp
    value = spec.eta_value(ctx)
    scale = mp.cbrt(value)
    step2 = 1 / (scale * scale)  # (delta t)^2
    points = _lattice_points(spec, t_grid, ctx)
    xs = dp2_orbit(spec, max(n for _, n in points) + 2, ctx)

    def scaled(n: int) -> HPReal:
        # s = n + 1/2 -> v_s = x_{n+1}
        sign = 1 if n % 2 else -1
        return sign * scale * xs[n + 1]

    rows = []
    for t, n in points:
        t_s = (n + mp.mpf(0.5) - 2 * value) / scale
        left, mid, right = scaled(n - 1), scaled(n), scaled(n + 1)
        second = (right - 2 * mid + left) / step2
        residual = abs(second - t_s * mid - 2 * mid**3)
        v_prev = xs[n]
        log_gap = abs(mp.log(1 - v_prev * v_prev) / step2 + mid * mid)
        rows.append(PIIResidual(t, HalfInt(n), mid, residual, log_gap))
    return rows


def dp2_pii_residual(eta: Any, t_grid: Iterable[Any], ctx: ArithContext) -> list[PIIResidual]:
    """Residual profile of the rescaled dPII orbit against PII over t_grid.

    The orbit runs with PII_PRECISION_PER_STEP extra bits per step and is
    recomputed with twice the boost; the profile is accepted once both runs
    agree to the degeneracy window of ctx.
    """
    grid = list(t_grid)
    if not grid:
        raise ValidationError("t grid is empty")
    spec = bessel_spec(eta)
    n_max = max(n for _, n in _lattice_points(spec, grid, ctx)) + 2
    extra = PII_PRECISION_PER_STEP * n_max
    coarse = _profile(spec, grid, ctx.boosted(extra))
    for _ in range(PII_MAX_DOUBLINGS):
        extra *= 2
        fine = _profile(spec, grid, ctx.boosted(extra))
        if all(
            ctx.agrees(ctx.convert(a.residual), ctx.convert(b.residual), 1)
            for a, b in zip(coarse, fine, strict=True)
        ):
            log.debug("PII profile for eta=%s stable at +%d bits", spec.eta, extra // 2)
            return [
                PIIResidual(
                    ctx.convert(r.t),
                    r.s,
                    ctx.convert(r.v),
                    ctx.convert(r.residual),
                    ctx.convert(r.log_gap),
                )
                for r in coarse
            ]
        coarse = fine
    raise PrecisionInsufficientError(
        f"dPII orbit for eta={spec.eta} not stable after {PII_MAX_DOUBLINGS} precision doublings"
    )


def dp2_log_gap_trend(
    eta: Any, t_grid: Iterable[Any], ctx: ArithContext
) -> list[tuple[HPReal, HPReal]]:
    """(t, |(ln D)'' + v^2|) with the second difference of ln D on the scaled lattice."""
    return [(row.t, row.log_gap) for row in dp2_pii_residual(eta, t_grid, ctx)]


def strictly_decreasing(values: Sequence[HPReal]) -> bool:
    return all(b < a for a, b in zip(values, values[1:], strict=False))
