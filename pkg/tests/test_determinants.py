from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapflow.core.exceptions import (
    InvariantViolationError,
    NonConvergenceError,
    ValidationError,
)
from gapflow.core.workers import WorkerPool
from gapflow.determinants import (
    GapMethod,
    GapTable,
    fredholm_det,
    fredholm_gap,
    gap_table,
    leading_minors,
    precision_warning,
    required_bits,
    resolvent_det_diag,
    resolvent_diag,
    toeplitz_gap,
    toeplitz_gaps,
)
from gapflow.kernels import HALF, Bessel, HalfInt, Hypergeometric, ZeroKernel, kernel_for
from gapflow.numerics import bessel_i, ctx_new, gauss_2f1

TOL = "1e-20"
SMALL = Hypergeometric.of("0.3", "0.7", "0.5")
CONJUGATE = Hypergeometric.of("1.5+0.5i", "1.5-0.5i", "0.4")


# Toeplitz


def test_toeplitz_closed_forms_bessel(ctx):
    mp = ctx.mp
    spec = Bessel.of(1)
    i0, i1 = bessel_i(0, 2, ctx), bessel_i(1, 2, ctx)
    assert toeplitz_gap(spec, 0, ctx) == mp.exp(-1)
    assert abs(toeplitz_gap(spec, 1, ctx) - mp.exp(-1) * i0) < 1e-70
    assert abs(toeplitz_gap(spec, 2, ctx) - mp.exp(-1) * (i0**2 - i1**2)) < 1e-70


def test_toeplitz_closed_forms_hypergeometric(ctx):
    mp = ctx.mp
    z, zp, xi = SMALL.values(ctx)
    weight = mp.power(1 - xi, z * zp)
    assert abs(toeplitz_gap(SMALL, 0, ctx) - weight) < 1e-70
    expected = weight * gauss_2f1(-z, -zp, 1, xi, ctx)
    assert abs(toeplitz_gap(SMALL, 1, ctx) - expected) < 1e-70


@pytest.mark.parametrize("spec", [Bessel.of("1.5"), SMALL, CONJUGATE])
def test_leading_minors_match_single_determinants(ctx, spec):
    table = toeplitz_gaps(spec, 6, ctx)
    assert len(table) == 7
    for k in (0, 3, 6):
        assert abs(table[k] - toeplitz_gap(spec, k, ctx)) < 1e-60


def test_toeplitz_rejects_negative_size(ctx):
    with pytest.raises(ValidationError):
        toeplitz_gap(Bessel.of(1), -1, ctx)


@settings(max_examples=25, deadline=None)
@given(
    entries=st.lists(st.integers(-5, 5), min_size=16, max_size=16),
    size=st.integers(1, 4),
)
def test_leading_minors_agree_with_lu(entries, size):
    ctx = ctx_new(128)
    # Diagonal dominance keeps every leading minor away from zero.
    rows = [
        [ctx.mp.mpf(entries[4 * i + j] + (20 if i == j else 0)) for j in range(size)]
        for i in range(size)
    ]
    minors = leading_minors(rows, ctx)
    assert minors[0] == 1
    for j in range(1, size + 1):
        block = ctx.mp.matrix([row[:j] for row in rows[:j]])
        assert abs(minors[j] - ctx.mp.det(block)) < 1e-25 * abs(minors[j])


def test_precision_guidance():
    ctx = ctx_new(256)
    assert required_bits(Bessel.of(2), 40) == 359
    assert required_bits(SMALL, 40) is None
    assert precision_warning(Bessel.of(2), 40, ctx) is not None
    assert precision_warning(Bessel.of(2), 5, ctx) is None


# Fredholm


def test_fredholm_first_point_is_prefactor(ctx):
    value, report = fredholm_gap(Bessel.of(1), HALF, TOL, ctx)
    assert abs(value - ctx.mp.exp(-1)) < 1e-20
    assert report.size >= 16 and report.tail < 1e-20
    assert report.describe().startswith("M=")


def test_fredholm_far_point_is_one(ctx):
    value, _ = fredholm_gap(Bessel.of(1), HalfInt(20), TOL, ctx)
    assert abs(value - 1) < 1e-20


def test_zero_kernel(ctx):
    value, report = fredholm_det(ZeroKernel(ctx), HALF, ctx.convert(TOL))
    assert value == 1 and report.doublings == 0
    assert resolvent_det_diag(ZeroKernel(ctx), HALF, ctx.convert(TOL)) == 0


def test_fredholm_cap_and_domain(ctx):
    with pytest.raises(NonConvergenceError):
        fredholm_gap(Bessel.of(1), HALF, TOL, ctx, cap=8)
    with pytest.raises(ValidationError):
        fredholm_gap(Bessel.of(1), HalfInt(-1), TOL, ctx)


@pytest.mark.parametrize("eta", ["0.5", "2"])
def test_toeplitz_and_fredholm_agree_bessel(ctx, eta):
    spec = Bessel.of(eta)
    toeplitz = toeplitz_gaps(spec, 10, ctx)
    kernel = kernel_for(spec, ctx)
    for k in range(11):
        value, _ = fredholm_gap(spec, HalfInt(k), TOL, ctx, kernel=kernel)
        assert abs(value - toeplitz[k]) < 1e-20


@pytest.mark.slow
def test_toeplitz_and_fredholm_agree_hypergeometric(ctx):
    toeplitz = toeplitz_gaps(SMALL, 7, ctx)
    kernel = kernel_for(SMALL, ctx)
    for k in range(8):
        value, _ = fredholm_gap(SMALL, HalfInt(k), TOL, ctx, kernel=kernel)
        assert abs(value - toeplitz[k]) < 1e-20


def test_resolvent_ratio_bessel(ctx):
    value = resolvent_diag(Bessel.of(1), HALF, TOL, ctx)
    assert abs(1 + value - bessel_i(0, 2, ctx)) < 1e-20


@pytest.mark.parametrize("eta", ["0.5", "2"])
def test_resolvent_ratio_matches_toeplitz(ctx, eta):
    spec = Bessel.of(eta)
    toeplitz = toeplitz_gaps(spec, 11, ctx)
    kernel = kernel_for(spec, ctx)
    for k in range(11):
        value = resolvent_diag(spec, HalfInt(k), TOL, ctx, kernel=kernel)
        assert abs(1 + value - toeplitz[k + 1] / toeplitz[k]) < 1e-20, k


@pytest.mark.slow
def test_resolvent_ratio_hypergeometric(ctx):
    toeplitz = toeplitz_gaps(SMALL, 8, ctx)
    kernel = kernel_for(SMALL, ctx)
    for k in range(8):
        value = resolvent_diag(SMALL, HalfInt(k), TOL, ctx, kernel=kernel)
        assert abs(1 + value - toeplitz[k + 1] / toeplitz[k]) < 1e-20, k


# Tables


def test_gap_table_bessel(ctx):
    mp = ctx.mp
    table = gap_table(Bessel.of(1), 2, "toeplitz", ctx)
    i0, i1 = bessel_i(0, 2, ctx), bessel_i(1, 2, ctx)
    assert table.k_max == 2 and len(table) == 3
    assert abs(table[2] - mp.exp(-1) * (i0**2 - i1**2)) < 1e-70
    assert table.method is GapMethod.TOEPLITZ


def test_gap_table_single_entry(ctx):
    table = gap_table(SMALL, 0, GapMethod.TOEPLITZ, ctx)
    assert list(table) == [(0, toeplitz_gap(SMALL, 0, ctx))]


def test_gap_table_density_sums_to_increment(ctx):
    table = gap_table(Bessel.of(1), 8, "toeplitz", ctx)
    density = table.density()
    assert sorted(density) == list(range(8))
    assert all(v >= 0 for v in density.values())
    assert abs(sum(density.values()) - (table[8] - table[0])) < 1e-60


def test_gap_table_fredholm_records_truncation(ctx):
    table = gap_table(Bessel.of("0.5"), 4, "fredholm", ctx, pool=WorkerPool(2))
    assert table.meta(0).startswith("M=")
    assert table.peak_truncation() is not None
    toeplitz = gap_table(Bessel.of("0.5"), 4, "toeplitz", ctx)
    for k, value in table:
        assert abs(value - toeplitz[k]) < 1e-20


def test_gap_table_validation_at_doubled_precision(ctx):
    table = gap_table(Bessel.of(1), 6, "toeplitz", ctx, validate=True)
    assert table.precision_bits == 256


def test_recurrence_below_seed_length(ctx):
    table = gap_table(Bessel.of(1), 0, "recurrence", ctx)
    assert table.notes == ("seeds only",)


def test_gap_table_input_errors(ctx):
    with pytest.raises(ValidationError):
        gap_table("bessel", 3, "toeplitz", ctx)  # type: ignore[arg-type]
    with pytest.raises(ValidationError):
        gap_table(Bessel.of(1), -1, "toeplitz", ctx)
    with pytest.raises(ValidationError):
        gap_table(Bessel.of(1), 3, "montecarlo", ctx)


def test_check_invariants(ctx):
    mp = ctx.mp
    decreasing = GapTable(Bessel.of(1), GapMethod.TOEPLITZ, 256, {0: mp.mpf(0.5), 1: mp.mpf(0.4)})
    with pytest.raises(InvariantViolationError):
        decreasing.check_invariants(ctx)
    too_big = GapTable(Bessel.of(1), GapMethod.TOEPLITZ, 256, {0: mp.mpf(1.5)})
    with pytest.raises(InvariantViolationError):
        too_big.check_invariants(ctx)
