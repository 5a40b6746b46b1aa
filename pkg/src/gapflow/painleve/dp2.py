"""Discrete Painleve II route for the poissonized Plancherel gaps.

x_0 = -1, x_1 = I_1(2 eta)/I_0(2 eta) and

    x_{n+1} + x_{n-1} = n x_n / (eta (x_n^2 - 1)),

then p_{k+1} = (1 - x_k^2) p_k^2 / p_{k-1}. Half-integer quantities use
v_s = x_{s+1/2}, so v_{-1/2} = x_0 = -1.

Past n ~ 2 eta the orbit is the recessive solution of an unstable
recursion: rounding errors grow like the dominant solution and overtake
x_n once |x_n| ~ sqrt(ulp). The orbit is therefore frozen at 0 as soon as
two consecutive |x_n| drop below sqrt(eps); from there on x_n^2 < eps and
1 - x_n^2 = 1 to working precision.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from ..core.exceptions import DegeneracyError, InvariantViolationError, ValidationError
from ..determinants import GapMethod, GapTable, toeplitz_gaps
from ..kernels import Bessel, HalfInt
from ..numerics import ArithContext, HPReal, bessel_i

log = logging.getLogger(__name__)


def bessel_spec(eta: Any) -> Bessel:
    """Accept a Bessel spec or anything exact() understands."""
    return eta if isinstance(eta, Bessel) else Bessel.of(eta)


@dataclass(frozen=True, slots=True)
class DP2State:
    """Rolling dPII state (n, x_{n-1}, x_n)."""

    n: int
    x_prev: HPReal
    x_cur: HPReal
    eta: HPReal


def dp2_init(eta: Any, ctx: ArithContext) -> DP2State:
    """State at n = 1 with x_0 = -1 and x_1 = I_1(2 eta) / I_0(2 eta)."""
    value = bessel_spec(eta).eta_value(ctx)
    arg = 2 * value
    x1 = bessel_i(1, arg, ctx) / bessel_i(0, arg, ctx)
    return DP2State(1, -ctx.mp.one, x1, value)


def dp2_step(state: DP2State, ctx: ArithContext) -> DP2State:
    x = state.x_cur
    if ctx.is_near(x * x, 1):
        raise DegeneracyError(
            "dp2: x_n^2 = 1 (non-generic eta near this n)",
            ctx.mp.nstr(x, 10),
            {"n": state.n, "eta": ctx.mp.nstr(state.eta, 10)},
        )
    nxt = state.n * x / (state.eta * (x * x - 1)) - state.x_prev
    return DP2State(state.n + 1, x, ctx.check(nxt, "dPII x"), state.eta)


def dp2_orbit(eta: Any, n_max: int, ctx: ArithContext) -> list[HPReal]:
    """x_0 .. x_{n_max}, frozen at 0 once the recessive orbit underflows."""
    if n_max < 0:
        raise ValidationError(f"n_max must be >= 0, got {n_max}")
    state = dp2_init(eta, ctx)
    xs = [state.x_prev, state.x_cur][: n_max + 1]
    floor = ctx.mp.sqrt(ctx.eps)
    while len(xs) <= n_max:
        if abs(xs[-1]) < floor and abs(xs[-2]) < floor:
            log.debug("dPII orbit frozen at n=%d (eta=%s)", len(xs) - 1, state.eta)
            xs.extend([ctx.mp.zero] * (n_max + 1 - len(xs)))
            break
        state = dp2_step(state, ctx)
        xs.append(state.x_cur)
    return xs


def dp2_gap_series(eta: Any, k_max: int, ctx: ArithContext) -> GapTable:
    """p_0 .. p_{k_max} from two Bessel values and the dPII orbit."""
    if k_max < 1:
        raise ValidationError(f"dp2_gap_series needs k_max >= 1, got {k_max}")
    spec = bessel_spec(eta)
    value = spec.eta_value(ctx)
    mp = ctx.mp
    p = [mp.exp(-value * value)]
    p.append(p[0] * bessel_i(0, 2 * value, ctx))
    xs = dp2_orbit(spec, k_max - 1, ctx)
    for k in range(1, k_max):
        nxt = (1 - xs[k] * xs[k]) * p[k] * p[k] / p[k - 1]
        if nxt <= 0:
            raise InvariantViolationError(
                f"dPII gap p_{k + 1} = {mp.nstr(nxt, 10)} is not positive"
            )
        p.append(nxt)
    return GapTable(spec, GapMethod.RECURRENCE, ctx.precision_bits, dict(enumerate(p)))


def dp2_b_series(eta: Any, s_max: HalfInt, ctx: ArithContext) -> list[tuple[HalfInt, HPReal]]:
    """(s, b_s) for s = 1/2 .. s_max with b_{s+1} = b_s (1 - v_s^2)."""
    if not s_max.is_positive:
        raise ValidationError(f"s_max must be in Z'_+, got {s_max}")
    spec = bessel_spec(eta)
    xs = dp2_orbit(spec, s_max.n, ctx)
    b = bessel_i(0, 2 * spec.eta_value(ctx), ctx)
    series = [(HalfInt(0), b)]
    for n in range(1, s_max.n + 1):
        v = xs[n]  # v_{s} with s = n - 1/2
        b = b * (1 - v * v)
        series.append((HalfInt(n), b))
    return series


@dataclass(frozen=True, slots=True)
class DP2Scalars:
    """Compatibility scalars at one lattice point, all derived from (b_s, v_s)."""

    s: HalfInt
    v_prev: HPReal
    v: HPReal
    b: HPReal
    a: HPReal
    w: HPReal
    p: HPReal
    r: HPReal


def dp2_scalars(eta: Any, s_max: HalfInt, ctx: ArithContext) -> list[DP2Scalars]:
    """a_s = 1/b_s, w_s = eta v_s^2, p_s = eta v_{s-1} v_s, r_s = b_s w_s."""
    spec = bessel_spec(eta)
    value = spec.eta_value(ctx)
    xs = dp2_orbit(spec, s_max.n + 1, ctx)
    rows = []
    for s, b in dp2_b_series(spec, s_max, ctx):
        v_prev, v = xs[s.n], xs[s.n + 1]
        w = value * v * v
        rows.append(DP2Scalars(s, v_prev, v, b, 1 / b, w, value * v_prev * v, b * w))
    return rows


def dp2_vsquared_check(eta: Any, s_max: HalfInt, ctx: ArithContext) -> HPReal:
    """max |v_s^2 - (1 - D_s D_{s+2} / D_{s+1}^2)| over s = 1/2 .. s_max."""
    spec = bessel_spec(eta)
    xs = dp2_orbit(spec, s_max.n + 1, ctx)
    d = toeplitz_gaps(spec, s_max.n + 2, ctx)
    worst = ctx.mp.zero
    for n in range(s_max.n + 1):
        v = xs[n + 1]
        worst = max(worst, abs(v * v - (1 - d[n] * d[n + 2] / (d[n + 1] * d[n + 1]))))
    return worst
