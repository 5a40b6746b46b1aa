"""Subcommand implementations. Each returns the process exit code."""

from __future__ import annotations

import logging
import statistics
import sys
import time
from collections.abc import Callable

from ..core.constants import EXIT_OK, EXIT_THRESHOLD
from ..core.exceptions import (
    InvariantViolationError,
    PrecisionInsufficientError,
    ValidationError,
)
from ..core.report import GAP_COLUMNS, Report, emit
from ..determinants import GapMethod, GapTable, gap_table, precision_warning, toeplitz_gaps
from ..kernels import Bessel, Hypergeometric
from ..numerics import ArithContext, HPReal
from ..oracles import OracleReport, plancherel_p_oracle, poissonized_p, zmeasure_q_oracle
from ..painleve import dp2_pii_residual, dp5_to_dp2_check, strictly_decreasing
from .config import RunConfig

log = logging.getLogger(__name__)

MIN_BENCH_REPEAT = 5


def _say(message: str) -> None:
    print(f"gapflow: {message}", file=sys.stderr)


def _finish(config: RunConfig, report: Report) -> None:
    report.config = config.echo()
    emit(report, config.fmt, config.out)


def _table(config: RunConfig, method: GapMethod, validate: bool = False) -> GapTable:
    return gap_table(
        config.spec,
        config.k_max,
        method,
        config.ctx,
        tol=config.tol,
        validate=validate,
        pool=config.pool(),
    )


def cmd_compute(config: RunConfig) -> int:
    """One row per k and method: D value, provenance and truncation metadata."""
    ctx = config.ctx
    methods = config.methods or (GapMethod.TOEPLITZ,)
    columns = list(GAP_COLUMNS) + (["density"] if config.density else [])
    report = Report(columns)
    for method in methods:
        if method is GapMethod.TOEPLITZ:
            precision_warning(config.spec, config.k_max, ctx)
        table = _table(config, method, validate=config.validate)
        density = table.density() if config.density else {}
        for k, value in table:
            row = {
                "k": k,
                "value": ctx.format(value),
                "method": str(method),
                "precision_bits": ctx.precision_bits,
                "meta": table.meta(k) or ";".join(table.notes),
            }
            if config.density:
                row["density"] = ctx.format(density[k]) if k in density else ""
            report.add(row)
    _finish(config, report)
    return EXIT_OK


def cmd_compare(config: RunConfig) -> int:
    """Per-k absolute and relative discrepancies against the first method."""
    methods = config.methods
    if len(set(methods)) < 2:
        raise ValidationError("compare needs at least two distinct --method values")
    ctx = config.ctx
    warning = precision_warning(config.spec, config.k_max, ctx)
    try:
        tables = [_table(config, m) for m in methods]
    except (InvariantViolationError, PrecisionInsufficientError) as e:
        _say(f"comparison failed: {e}")
        if warning:
            _say(warning)
        return EXIT_THRESHOLD

    base = tables[0]
    diffs = {k: max(abs(t[k] - value) for t in tables[1:]) for k, value in base}
    worst = max(diffs, key=lambda k: diffs[k])
    names = [str(m) for m in methods]
    report = Report(["k", *names, "abs_diff", "rel_diff", "max"])
    for k, value in base:
        row: dict[str, object] = {n: ctx.format(t[k]) for n, t in zip(names, tables, strict=True)}
        row.update(
            k=k,
            abs_diff=ctx.mp.nstr(diffs[k], 5),
            rel_diff=ctx.mp.nstr(diffs[k] / abs(value), 5),
            max="*" if k == worst else "",
        )
        report.add(row)
    _finish(config, report)

    passed = diffs[worst] < ctx.convert(config.tol)
    _say(f"max |diff| = {ctx.mp.nstr(diffs[worst], 5)} at k={worst} (tol {config.tol})")
    if not passed and warning:
        _say(warning)
    return EXIT_OK if passed else EXIT_THRESHOLD


def _oracle_fn(config: RunConfig) -> Callable[[int], OracleReport]:
    ctx = config.ctx
    spec = config.spec
    match config.target:
        case "lis":
            if not isinstance(spec, Bessel):
                raise ValidationError("oracle lis needs --eta")
            # Fail fast on the enumeration cap before any worker starts.
            poissonized_p(1, spec.eta, config.n_max, ctx)
            return lambda k: poissonized_p(k, spec.eta, config.n_max, ctx)
        case "plancherel":
            if not isinstance(spec, Bessel):
                raise ValidationError("oracle plancherel needs --eta")
            return lambda k: plancherel_p_oracle(k, spec.eta, config.size_max, ctx)
        case "zmeasure":
            if not isinstance(spec, Hypergeometric):
                raise ValidationError("oracle zmeasure needs --z, --zp and --xi")
            return lambda k: zmeasure_q_oracle(k, spec, config.size_max, ctx)
    raise ValidationError(f"unknown oracle {config.target!r}")


def cmd_oracle(config: RunConfig) -> int:
    """Oracle value, Toeplitz value, |diff| and bound per k = 1..k_max."""
    if config.k_max < 1:
        raise ValidationError("oracle needs --kmax >= 1")
    ctx = config.ctx
    oracle = _oracle_fn(config)
    ks = list(range(1, config.k_max + 1))
    reports = config.pool().map(oracle, ks, label=f"oracle {config.target}")
    determinant = toeplitz_gaps(config.spec, config.k_max, ctx)
    tol = ctx.convert(config.tol)

    report = Report(["k", "oracle", "determinant", "diff", "bound", "meta", "pass"])
    passed = True
    for k, result in zip(ks, reports, strict=True):
        diff = abs(result.value - determinant[k])
        ok = diff <= result.bound + tol
        passed = passed and ok
        report.add(
            {
                "k": k,
                "oracle": ctx.format(result.value),
                "determinant": ctx.format(determinant[k]),
                "diff": ctx.mp.nstr(diff, 5),
                "bound": ctx.mp.nstr(result.bound, 5),
                "meta": result.describe(),
                "pass": "yes" if ok else "no",
            }
        )
    _finish(config, report)
    return EXIT_OK if passed else EXIT_THRESHOLD


def cmd_bench(config: RunConfig) -> int:
    """Median wall time per method over repeated identical runs."""
    if config.repeat < MIN_BENCH_REPEAT:
        raise ValidationError(f"--repeat must be >= {MIN_BENCH_REPEAT}, got {config.repeat}")
    methods = config.methods or (GapMethod.TOEPLITZ, GapMethod.RECURRENCE)
    medians: dict[GapMethod, float] = {}
    peaks: dict[GapMethod, int | None] = {}
    for method in methods:
        timings = []
        table: GapTable | None = None
        for _ in range(config.repeat):
            started = time.perf_counter()
            table = _table(config, method)
            timings.append(time.perf_counter() - started)
        medians[method] = statistics.median(timings)
        peaks[method] = table.peak_truncation() if table else None
        log.info("bench %s: median %.6fs over %d runs", method, medians[method], config.repeat)

    baseline = medians[methods[0]]
    report = Report(["method", "median_seconds", "ratio", "peak_truncation", "runs"])
    for method in methods:
        report.add(
            {
                "method": method,
                "median_seconds": f"{medians[method]:.6f}",
                "ratio": f"{baseline / medians[method]:.3f}" if medians[method] else "",
                "peak_truncation": peaks[method] if peaks[method] is not None else "",
                "runs": config.repeat,
            }
        )
    _finish(config, report)
    return EXIT_OK


def _trend_ok(columns: dict[str, list[HPReal]]) -> bool:
    failing = [name for name, values in columns.items() if not strictly_decreasing(values)]
    for name in failing:
        _say(f"column {name} does not decrease strictly along the scale list")
    return not failing


def _limits_dpv(config: RunConfig, ctx: ArithContext) -> int:
    if len(config.n_list) < 2:
        raise ValidationError("a trend needs at least two values of N")
    spec = config.spec
    if not isinstance(spec, Bessel):
        raise ValidationError("limits dpv-to-dpii needs --eta")
    rows = dp5_to_dp2_check(spec, config.n_list, ctx, pool=config.pool())
    report = Report(["N", "alpha", "b", "beta", "gap"])
    columns: dict[str, list[HPReal]] = {name: [] for name in ("alpha", "b", "beta", "gap")}
    for row in rows:
        values = row.columns()
        report.add({"N": row.n, **{name: ctx.mp.nstr(v, 8) for name, v in values.items()}})
        for name, value in values.items():
            columns[name].append(value)
    _finish(config, report)
    return EXIT_OK if _trend_ok(columns) else EXIT_THRESHOLD


def _limits_dpii(config: RunConfig, ctx: ArithContext) -> int:
    if len(config.eta) < 2:
        raise ValidationError("a trend needs at least two values of eta")
    profiles = config.pool().map(
        lambda eta: dp2_pii_residual(eta, config.t_grid, ctx), config.eta, label="dpii-to-pii"
    )
    report = Report(["eta", "t", "s", "v", "residual", "log_gap"])
    columns: dict[str, list[HPReal]] = {}
    for eta, profile in zip(config.eta, profiles, strict=True):
        for t, row in zip(config.t_grid, profile, strict=True):
            report.add(
                {
                    "eta": eta,
                    "t": f"{float(t):g}",
                    "s": row.s,
                    "v": ctx.mp.nstr(row.v, 10),
                    "residual": ctx.mp.nstr(row.residual, 8),
                    "log_gap": ctx.mp.nstr(row.log_gap, 8),
                }
            )
            columns.setdefault(f"residual(t={t})", []).append(row.residual)
    _finish(config, report)
    return EXIT_OK if _trend_ok(columns) else EXIT_THRESHOLD


def cmd_limits(config: RunConfig) -> int:
    """Trend tables; exit 0 iff every tracked column decreases strictly."""
    match config.target:
        case "dpv-to-dpii":
            return _limits_dpv(config, config.ctx)
        case "dpii-to-pii":
            return _limits_dpii(config, config.ctx)
    raise ValidationError(f"unknown limit {config.target!r}")


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "compute": cmd_compute,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
    "limits": cmd_limits,
}
