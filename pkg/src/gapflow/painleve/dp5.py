"""Discrete Painleve V route for the z-measure gaps.

The state is (alpha_s, b_s, beta_s) on s in Z'_+; c_s and d_s are views:

    c_s = b_s + (z' + s + 1/2) / (1 - xi alpha_s) + z
    d_s = b_s - (z + s - 1/2) / (1 - alpha_s) + z

The same orbit is also coded directly in the (x_n, y_n) variables with
x_n = alpha_{n+1/2}, y_n = c_{n+1/2}; the gap recursion uses that form. Every
division is preceded by a guard that raises DegeneracyError when its
denominator (or a forbidden value) is within 1e6 eps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..core.exceptions import (
    DegeneracyError,
    DegenerateDifferenceError,
    InvariantViolationError,
    ValidationError,
)
from ..determinants import GapMethod, GapTable, toeplitz_gaps
from ..kernels import HALF, HalfInt, Hypergeometric
from ..numerics import ArithContext, HPNumber, HPReal, gauss_2f1

log = logging.getLogger(__name__)


def _guard(
    ctx: ArithContext,
    value: HPNumber,
    forbidden: HPNumber | int,
    location: str,
    spec: Hypergeometric,
    **where: object,
) -> None:
    if ctx.is_near(value, forbidden):
        params = {**spec.describe(), **where}
        params.pop("kernel", None)
        raise DegeneracyError(location, ctx.mp.nstr(value, 10), params)


@dataclass(frozen=True, slots=True)
class DP5State:
    """dPV state at s: (alpha_s, b_s, beta_s)."""

    s: HalfInt
    alpha: HPNumber
    b: HPNumber
    beta: HPNumber
    spec: Hypergeometric

    def c(self, ctx: ArithContext) -> HPNumber:
        z, zp, xi = self.spec.values(ctx)
        return self.b + (zp + self.s.n + 1) / (1 - xi * self.alpha) + z

    def d(self, ctx: ArithContext) -> HPNumber:
        z, _, _ = self.spec.values(ctx)
        return self.b - (z + self.s.n) / (1 - self.alpha) + z


@dataclass(frozen=True, slots=True)
class _InitialSeries:
    f0: HPNumber  # F(-z, -z'; 1; xi)
    f1: HPNumber  # F(-z+1, -z'; 1; xi)
    f2: HPNumber  # F(-z+1, -z'+1; 2; xi)
    f3: HPNumber  # F(-z, -z'-1; 1; xi)
    f4: HPNumber  # F(-z+1, -z'; 2; xi)


def _initial_series(spec: Hypergeometric, ctx: ArithContext) -> _InitialSeries:
    z, zp, xi = spec.values(ctx)
    return _InitialSeries(
        gauss_2f1(-z, -zp, 1, xi, ctx),
        gauss_2f1(1 - z, -zp, 1, xi, ctx),
        gauss_2f1(1 - z, 1 - zp, 2, xi, ctx),
        gauss_2f1(-z, -zp - 1, 1, xi, ctx),
        gauss_2f1(1 - z, -zp, 2, xi, ctx),
    )


def dp5_init(spec: Hypergeometric, ctx: ArithContext) -> DP5State:
    """State at s = 1/2 from hypergeometric initial conditions."""
    z, zp, xi = spec.values(ctx)
    mp = ctx.mp
    f = _initial_series(spec, ctx)
    _guard(ctx, zp * xi * f.f2, 0, "dp5_init: z' xi F(-z+1,-z'+1;2;xi) = 0", spec)
    _guard(ctx, f.f0, 0, "dp5_init: F(-z,-z';1;xi) = 0", spec)
    _guard(ctx, z * f.f1, 0, "dp5_init: z F(-z+1,-z';1;xi) = 0", spec)
    _guard(ctx, f.f4, 0, "dp5_init: F(-z+1,-z';2;xi) = 0", spec)

    alpha = -f.f1 / (zp * xi * f.f2)
    b = -z * f.f1 / f.f0
    beta = -mp.sqrt(z * zp * xi) * mp.power(1 - xi, z + zp) / (z * f.f1)
    state = DP5State(HALF, alpha, b, beta, spec)

    closed_form = zp * f.f3 * f.f2 / (f.f0 * f.f4)
    if not ctx.agrees(state.c(ctx), closed_form):
        raise InvariantViolationError(
            f"c_1/2 = {mp.nstr(state.c(ctx), 15)} disagrees with its closed form "
            f"{mp.nstr(closed_form, 15)}"
        )
    return state


def dp5_step(state: DP5State, ctx: ArithContext) -> DP5State:
    """(alpha, b, beta) at s -> s + 1."""
    spec = state.spec
    z, zp, xi = spec.values(ctx)
    s = state.s
    sp = s.n + 1  # s + 1/2
    alpha, b = state.alpha, state.b
    where = {"s": str(s)}

    _guard(ctx, alpha, 0, "dp5_step: alpha_s = 0", spec, **where)
    _guard(ctx, xi * alpha, 1, "dp5_step: xi alpha_s = 1", spec, **where)
    u = b + (zp + sp) / (1 - xi * alpha)
    for forbidden, label in (
        (-z, "-z"),
        (zp - z, "z'-z"),
        (zp + sp, "z'+s+1/2"),
        (zp - z + sp, "z'-z+s+1/2"),
    ):
        location = f"dp5_step: b_s + (z'+s+1/2)/(1-xi alpha_s) = {label}"
        _guard(ctx, u, forbidden, location, spec, **where)

    alpha_next = (u - zp - sp) * (u - zp + z - sp) / (xi * alpha * (u + z) * (u + z - zp))
    _guard(ctx, alpha_next, 1, "dp5_step: alpha_{s+1} = 1", spec, **where)
    _guard(ctx, xi * alpha_next, 1, "dp5_step: xi alpha_{s+1} = 1", spec, **where)
    b_next = -b - (zp + sp) / (1 - xi * alpha) + (z + sp) / (1 - alpha_next) - 2 * z + zp
    beta_next = xi * alpha * (u + z) / (u - (zp - z + sp)) * state.beta
    nxt = DP5State(s + 1, alpha_next, b_next, beta_next, spec)

    c, c_next = state.c(ctx), nxt.c(ctx)
    product = (c - (z + zp + sp)) * (c - (zp + sp)) / (xi * c * (c - zp))
    sum_rule = (z + sp) / (1 - alpha_next) + (zp + sp + 1) / (1 - xi * alpha_next) + zp
    if not (ctx.agrees(alpha * alpha_next, product) and ctx.agrees(c + c_next, sum_rule)):
        raise InvariantViolationError(f"dPV c-coordinate identities fail at s={s}")
    for value in (alpha_next, b_next, beta_next):
        ctx.check(value, "dPV state")
    return nxt


def dp5_back_step(state: DP5State, ctx: ArithContext) -> DP5State:
    """(alpha, b, beta) at s + 1 -> s, by the inverse map."""
    if state.s.n < 1:
        raise ValidationError(f"cannot step back from s={state.s}")
    spec = state.spec
    z, zp, xi = spec.values(ctx)
    s = state.s - 1
    assert isinstance(s, HalfInt)
    sp = s.n + 1
    alpha_next, b_next = state.alpha, state.b
    where = {"s": str(s)}

    _guard(ctx, alpha_next, 0, "dp5_back_step: alpha_{s+1} = 0", spec, **where)
    _guard(ctx, alpha_next, 1, "dp5_back_step: alpha_{s+1} = 1", spec, **where)
    d = b_next - (z + sp) / (1 - alpha_next) + z
    for forbidden, label in ((0, "0"), (zp, "z'"), (-sp, "-(s+1/2)"), (-(z + sp), "-(z+s+1/2)")):
        _guard(ctx, d, forbidden, f"dp5_back_step: d_(s+1) = {label}", spec, **where)

    alpha = (d + sp) * (d + z + sp) / (xi * alpha_next * d * (d - zp))
    _guard(ctx, xi * alpha, 1, "dp5_back_step: xi alpha_s = 1", spec, **where)
    b = -b_next + (z + sp) / (1 - alpha_next) - (zp + sp) / (1 - xi * alpha) - 2 * z + zp
    beta = alpha_next * d / (d + z + sp) * state.beta
    return DP5State(s, alpha, b, beta, spec)


def dp5_orbit(spec: Hypergeometric, s_max: HalfInt, ctx: ArithContext) -> list[DP5State]:
    """States at s = 1/2 .. s_max."""
    states = [dp5_init(spec, ctx)]
    while states[-1].s < s_max:
        states.append(dp5_step(states[-1], ctx))
    return states


# (x, y) coding


def theorem2_init(spec: Hypergeometric, ctx: ArithContext) -> tuple[HPNumber, HPNumber]:
    """(x_0, y_0) straight from the hypergeometric closed forms."""
    _, zp, xi = spec.values(ctx)
    f = _initial_series(spec, ctx)
    _guard(ctx, zp * xi * f.f2, 0, "x_0 denominator = 0", spec)
    _guard(ctx, f.f0 * f.f4, 0, "y_0 denominator = 0", spec)
    return -f.f1 / (zp * xi * f.f2), zp * f.f3 * f.f2 / (f.f0 * f.f4)


def theorem2_step(
    n: int, x: HPNumber, y: HPNumber, spec: Hypergeometric, ctx: ArithContext
) -> tuple[HPNumber, HPNumber]:
    """(x_n, y_n) -> (x_{n+1}, y_{n+1})."""
    z, zp, xi = spec.values(ctx)
    where = {"n": n}
    _guard(ctx, x, 0, "x_n = 0", spec, **where)
    _guard(ctx, y, 0, "y_n = 0", spec, **where)
    _guard(ctx, y, zp, "y_n = z'", spec, **where)
    x_next = (y - (z + zp + n + 1)) * (y - (zp + n + 1)) / (xi * x * y * (y - zp))
    _guard(ctx, x_next, 1, "x_{n+1} = 1", spec, **where)
    _guard(ctx, xi * x_next, 1, "xi x_{n+1} = 1", spec, **where)
    y_next = -y + (z + n + 1) / (1 - x_next) + (zp + n + 2) / (1 - xi * x_next) + zp
    return ctx.check(x_next, "x"), ctx.check(y_next, "y")


def theorem2_orbit(
    spec: Hypergeometric, n_max: int, ctx: ArithContext
) -> list[tuple[HPNumber, HPNumber]]:
    x, y = theorem2_init(spec, ctx)
    orbit = [(x, y)]
    for n in range(n_max):
        x, y = theorem2_step(n, x, y, spec, ctx)
        orbit.append((x, y))
    return orbit


def ratio_of_differences(
    k: int,
    xy: tuple[HPNumber, HPNumber],
    xy_next: tuple[HPNumber, HPNumber],
    spec: Hypergeometric,
    ctx: ArithContext,
) -> HPNumber:
    """Right-hand side r_k of the gap identity.

    r_k = (q_{k+1}/q_k - q_{k+2}/q_{k+1}) / (q_{k+2}/q_{k+1} - q_{k+3}/q_{k+2}).
    """
    z, zp, xi = spec.values(ctx)
    (x, y), (x1, y1) = xy, xy_next
    upper = (1 - xi * x) * (y - zp) - (z + k + 1)
    lower = (1 - xi * x1) * (y1 - zp) - (z + k + 2)
    _guard(ctx, lower, 0, "ratio recursion denominator = 0", spec, k=k)
    factor = (z + k + 2) * (zp + k + 2) * (y - (zp + k + 1))
    denom = (1 - xi * x1) * (1 - xi * x) * x * y * (y - zp) ** 2
    _guard(ctx, denom, 0, "ratio recursion prefactor denominator = 0", spec, k=k)
    return upper / lower * factor / denom


def dp5_gap_series(spec: Hypergeometric, k_max: int, ctx: ArithContext) -> GapTable:
    """q_0 .. q_{k_max}: Toeplitz seeds q_0, q_1, q_2, then the ratio recursion."""
    if k_max < 2:
        raise ValidationError(f"dp5_gap_series needs k_max >= 2, got {k_max}")
    q: list[HPNumber] = list(toeplitz_gaps(spec, 2, ctx))
    orbit = theorem2_orbit(spec, max(k_max - 2, 0), ctx)
    rho = [q[1] / q[0], q[2] / q[1]]
    window = ctx.degeneracy_window
    notes: tuple[str, ...] = ()
    for k in range(k_max - 2):
        diff = rho[k] - rho[k + 1]
        if abs(diff) <= window * abs(rho[k + 1]):
            if abs(1 - q[k + 2]) <= window:
                log.debug("dPV gaps saturated at k=%d for %s", k + 2, spec.describe())
                q.extend([q[k + 2]] * (k_max - len(q) + 1))
                notes = (f"saturated from k={k + 2}",)
                break
            raise DegenerateDifferenceError(
                "dp5_gap_series: q_{k+1}/q_k - q_{k+2}/q_{k+1} = 0",
                ctx.mp.nstr(diff, 5),
                {"k": k, **spec.describe()},
            )
        r = ratio_of_differences(k, orbit[k], orbit[k + 1], spec, ctx)
        _guard(ctx, r, 0, "ratio of differences = 0", spec, k=k)
        rho.append(rho[k + 1] - diff / r)
        q.append(rho[k + 2] * q[k + 2])
    values: dict[int, HPReal] = {}
    for k, value in enumerate(q):
        real = ctx.real_part(value, f"dPV q_{k}")
        if real <= 0:
            raise InvariantViolationError(
                f"dPV gap q_{k} = {ctx.mp.nstr(real, 10)} is not positive"
            )
        values[k] = real
    return GapTable(spec, GapMethod.RECURRENCE, ctx.precision_bits, values, notes=notes)


def dp5_theorem2_residual(spec: Hypergeometric, k_max: int, ctx: ArithContext) -> HPReal:
    """max over k <= k_max of |LHS - RHS| of the gap identity, q from Toeplitz."""
    if k_max < 0:
        raise ValidationError(f"k_max must be >= 0, got {k_max}")
    orbit = theorem2_orbit(spec, k_max + 1, ctx)
    q = toeplitz_gaps(spec, k_max + 3, ctx)
    worst = ctx.mp.zero
    for k in range(k_max + 1):
        rhs = ratio_of_differences(k, orbit[k], orbit[k + 1], spec, ctx)
        upper = q[k + 1] / q[k] - q[k + 2] / q[k + 1]
        lower = q[k + 2] / q[k + 1] - q[k + 3] / q[k + 2]
        if ctx.is_near(lower, 0):
            raise DegenerateDifferenceError(
                "dp5_theorem2_residual: ratio difference = 0",
                ctx.mp.nstr(lower, 5),
                {"k": k, **spec.describe()},
            )
        worst = max(worst, abs(upper / lower - rhs))
    return worst
