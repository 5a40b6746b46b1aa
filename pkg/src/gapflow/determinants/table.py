"""Gap tables: k -> D_{k+1/2} with provenance.

All public interfaces index by integer k; the kernel-facing code works with
the lattice point s = k + 1/2 (``HalfInt(k)``).
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import StrEnum

from ..core.constants import DEFAULT_TOL
from ..core.exceptions import (
    InvariantViolationError,
    PrecisionInsufficientError,
    ValidationError,
)
from ..core.workers import WorkerPool
from ..kernels import Bessel, HalfInt, Hypergeometric, KernelSpec, kernel_for
from ..numerics import ArithContext, HPReal
from .fredholm import TruncationReport, fredholm_gap
from .toeplitz import toeplitz_gaps

log = logging.getLogger(__name__)


class GapMethod(StrEnum):
    TOEPLITZ = "toeplitz"
    FREDHOLM = "fredholm"
    RECURRENCE = "recurrence"

    @classmethod
    def parse(cls, value: str | GapMethod) -> GapMethod:
        try:
            return cls(value)
        except ValueError as e:
            choices = ", ".join(m.value for m in cls)
            raise ValidationError(f"unknown method {value!r} (choose from {choices})") from e


@dataclass(frozen=True)
class GapTable:
    """D_{k+1/2} for k = 0..k_max computed by one method."""

    spec: KernelSpec
    method: GapMethod
    precision_bits: int
    values: dict[int, HPReal]
    truncation: dict[int, TruncationReport] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def k_max(self) -> int:
        return max(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> HPReal:
        return self.values[k]

    def __iter__(self) -> Iterator[tuple[int, HPReal]]:
        return iter(sorted(self.values.items()))

    def density(self) -> dict[int, HPReal]:
        """First differences D_{k+3/2} - D_{k+1/2}: the law of the first row."""
        return {k: self.values[k + 1] - self.values[k] for k in sorted(self.values)[:-1]}

    def meta(self, k: int) -> str:
        report = self.truncation.get(k)
        return report.describe() if report else ""

    def peak_truncation(self) -> int | None:
        return max((r.size for r in self.truncation.values()), default=None)

    def check_invariants(self, ctx: ArithContext) -> GapTable:
        """Raise unless values lie in (0, 1] and are nondecreasing (up to rounding slack)."""
        slack = ctx.degeneracy_window
        previous: HPReal | None = None
        for k, value in self:
            if not 0 < value <= 1 + slack:
                raise InvariantViolationError(
                    f"{self.method} D at k={k} is {ctx.mp.nstr(value, 12)}, outside (0, 1]"
                )
            if previous is not None and value < previous - slack:
                raise InvariantViolationError(
                    f"{self.method} D decreases at k={k}: {ctx.mp.nstr(previous - value, 5)}"
                )
            previous = value
        return self


def gap_table(
    spec: KernelSpec,
    k_max: int,
    method: GapMethod | str,
    ctx: ArithContext,
    tol: HPReal | str = DEFAULT_TOL,
    validate: bool = False,
    pool: WorkerPool | None = None,
) -> GapTable:
    """Compute D_{k+1/2}, k = 0..k_max, by the requested method.

    With ``validate`` the table is recomputed at doubled precision and every
    entry must move by less than tol.
    """
    if not isinstance(spec, Bessel | Hypergeometric):
        raise ValidationError(f"not a kernel spec: {spec!r}")
    if k_max < 0:
        raise ValidationError(f"k_max must be >= 0, got {k_max}")
    method = GapMethod.parse(method)
    tol_value = ctx.convert(tol)

    table = _compute(spec, k_max, method, ctx, tol_value, pool or WorkerPool(1))
    table.check_invariants(ctx)
    if validate:
        fine = gap_table(spec, k_max, method, ctx.doubled(), tol, validate=False, pool=pool)
        for k, value in table:
            drift = abs(ctx.convert(fine[k]) - value)
            if drift >= tol_value:
                raise PrecisionInsufficientError(
                    f"{method} D at k={k} moved by {ctx.mp.nstr(drift, 5)} at doubled precision"
                )
        log.info("Validated %s table for %s up to k=%d", method, spec.describe(), k_max)
    return table


def _compute(
    spec: KernelSpec,
    k_max: int,
    method: GapMethod,
    ctx: ArithContext,
    tol: HPReal,
    pool: WorkerPool,
) -> GapTable:
    if method is GapMethod.TOEPLITZ:
        values = dict(enumerate(toeplitz_gaps(spec, k_max, ctx)))
        return GapTable(spec, method, ctx.precision_bits, values)

    if method is GapMethod.FREDHOLM:
        kernel = kernel_for(spec, ctx)
        results = pool.map(
            lambda k: fredholm_gap(spec, HalfInt(k), tol, ctx, kernel=kernel),
            range(k_max + 1),
            label="fredholm",
        )
        values = {k: value for k, (value, _) in enumerate(results)}
        reports = {k: report for k, (_, report) in enumerate(results)}
        return GapTable(spec, method, ctx.precision_bits, values, reports)

    # Recurrences need Toeplitz seeds; painleve imports this package.
    from ..painleve import dp2_gap_series, dp5_gap_series

    if isinstance(spec, Bessel):
        if k_max < 1:
            values = dict(enumerate(toeplitz_gaps(spec, k_max, ctx)))
            return GapTable(spec, method, ctx.precision_bits, values, notes=("seeds only",))
        return dp2_gap_series(spec, k_max, ctx)
    if k_max < 2:
        values = dict(enumerate(toeplitz_gaps(spec, k_max, ctx)))
        return GapTable(spec, method, ctx.precision_bits, values, notes=("seeds only",))
    return dp5_gap_series(spec, k_max, ctx)
