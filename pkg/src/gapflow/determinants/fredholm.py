"""Fredholm determinant route: D_s = det(1 - K_s) with K_s = K on {s, s+1, ...}.

The operator is truncated to the window {s, ..., s+M-1}. M starts at a
model-dependent guess and doubles until the kernel diagonal over
[s+M, s+2M] sums below tol and det on 2M points differs from det on M
points by less than tol; the 2M value is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..core.constants import FREDHOLM_HARD_CAP, HYP_INITIAL_TRUNCATION
from ..core.exceptions import NonConvergenceError, ValidationError
from ..kernels import HalfInt, Kernel, KernelSpec, initial_truncation, kernel_for
from ..numerics import ArithContext, HPNumber, HPReal
from .linalg import det, solve

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncationReport:
    """How the truncation loop ended: window size, diagonal tail, doublings."""

    size: int
    tail: HPReal
    doublings: int

    def describe(self) -> str:
        return f"M={self.size};doublings={self.doublings}"


@dataclass(frozen=True)
class _Converged:
    value: HPReal
    rows: list[list[HPNumber]]
    points: list[HalfInt]
    report: TruncationReport


def _points(s: HalfInt, size: int) -> list[HalfInt]:
    return [s + i for i in range(size)]


def _window(kernel: Kernel, points: list[HalfInt]) -> list[list[HPNumber]]:
    """Rows of 1 - K restricted to points."""
    one = kernel.ctx.mp.one
    return [
        [(one if x == y else 0) - kernel.entry(x, y) for y in points]
        for x in points
    ]


def _tail(kernel: Kernel, s: HalfInt, size: int) -> HPReal:
    total = kernel.ctx.mp.zero
    for i in range(size, 2 * size + 1):
        total += kernel.diagonal(s + i)
    return total


def _converge(
    kernel: Kernel,
    s: HalfInt,
    tol: HPReal,
    initial: int,
    cap: int,
) -> _Converged:
    ctx = kernel.ctx
    if not s.is_positive:
        raise ValidationError(f"Fredholm gaps need s in Z'_+, got s={s}")
    size = max(1, initial)
    dets: dict[int, HPReal] = {}
    doublings = 0
    while True:
        if 2 * size > cap:
            raise NonConvergenceError(
                f"Fredholm truncation at s={s} exceeded the cap of {cap} lattice points"
            )
        tail = _tail(kernel, s, size)
        if abs(tail) < tol:
            if size not in dets:
                dets[size] = ctx.real_part(det(_window(kernel, _points(s, size)), ctx))
            points = _points(s, 2 * size)
            rows = _window(kernel, points)
            value = ctx.real_part(det(rows, ctx), "Fredholm determinant")
            dets[2 * size] = value
            if abs(value - dets[size]) < tol:
                report = TruncationReport(2 * size, tail, doublings)
                log.debug("Fredholm s=%s converged: %s", s, report.describe())
                return _Converged(value, rows, points, report)
        size *= 2
        doublings += 1


def fredholm_det(
    kernel: Kernel,
    s: HalfInt,
    tol: HPReal,
    initial: int = HYP_INITIAL_TRUNCATION,
    cap: int = FREDHOLM_HARD_CAP,
) -> tuple[HPReal, TruncationReport]:
    """det(1 - K_s) for any kernel evaluator."""
    converged = _converge(kernel, s, kernel.ctx.convert(tol), initial, cap)
    return converged.value, converged.report


def fredholm_gap(
    spec: KernelSpec,
    s: HalfInt,
    tol: HPReal | str,
    ctx: ArithContext,
    kernel: Kernel | None = None,
    cap: int = FREDHOLM_HARD_CAP,
) -> tuple[HPReal, TruncationReport]:
    """D_s = det(1 - K_s) for a model; pass kernel to share its caches between calls."""
    kernel = kernel or kernel_for(spec, ctx)
    return fredholm_det(kernel, s, ctx.convert(tol), initial_truncation(spec, ctx), cap)


def resolvent_det_diag(
    kernel: Kernel,
    s: HalfInt,
    tol: HPReal,
    initial: int = HYP_INITIAL_TRUNCATION,
    cap: int = FREDHOLM_HARD_CAP,
) -> HPReal:
    """R_s(s, s) with R_s = K_s (1 - K_s)^(-1), for any kernel evaluator."""
    ctx = kernel.ctx
    converged = _converge(kernel, s, ctx.convert(tol), initial, cap)
    rhs = [kernel.entry(x, s) for x in converged.points]
    u = solve(converged.rows, rhs, ctx)
    return ctx.real_part(u[0], "resolvent diagonal")


def resolvent_diag(
    spec: KernelSpec,
    s: HalfInt,
    tol: HPReal | str,
    ctx: ArithContext,
    kernel: Kernel | None = None,
    cap: int = FREDHOLM_HARD_CAP,
) -> HPReal:
    kernel = kernel or kernel_for(spec, ctx)
    return resolvent_det_diag(kernel, s, ctx.convert(tol), initial_truncation(spec, ctx), cap)
