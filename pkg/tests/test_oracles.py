from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapflow.core.exceptions import ResourceBoundError, ValidationError
from gapflow.determinants import toeplitz_gap, toeplitz_gaps
from gapflow.kernels import Bessel, Hypergeometric
from gapflow.numerics import bessel_i
from gapflow.oracles import (
    Partition,
    hook_dim,
    lis_histogram,
    lis_length,
    p_k_n,
    p_k_n_rsk,
    partitions,
    plancherel_p_oracle,
    poisson_tail,
    poissonized_p,
    shell_dim_squares,
    zmeasure_q_oracle,
)

SMALL = Hypergeometric.of("0.3", "0.7", "0.5")


# Permutations


def test_lis_examples():
    assert lis_length([1, 2, 3, 4, 5]) == 5
    assert lis_length([5, 4, 3, 2, 1]) == 1
    assert lis_length([3, 1, 4, 2, 5]) == 3
    assert lis_length([]) == 0
    with pytest.raises(ValidationError):
        lis_length([1, 1, 2])


def _brute_lis(perm):
    for size in range(len(perm), 0, -1):
        for picked in itertools.combinations(perm, size):
            if all(a < b for a, b in itertools.pairwise(picked)):
                return size
    return 0


@settings(max_examples=60)
@given(st.integers(1, 7).flatmap(lambda n: st.permutations(range(1, n + 1))))
def test_lis_matches_exhaustive_search(perm):
    assert lis_length(perm) == _brute_lis(perm)


def test_lis_distribution_values():
    assert p_k_n(2, 3) == Fraction(5, 6)
    assert p_k_n(2, 4) == Fraction(14, 24)
    assert p_k_n(1, 6) == Fraction(1, math.factorial(6))
    assert p_k_n(7, 7) == 1
    assert sum(lis_histogram(5).values()) == math.factorial(5)


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_agrees_with_tableaux(n):
    for k in range(1, n + 1):
        assert p_k_n(k, n) == p_k_n_rsk(k, n)


def test_permutation_caps():
    with pytest.raises(ResourceBoundError) as info:
        p_k_n(3, 12)
    assert info.value.exit_code == 2
    with pytest.raises(ValidationError):
        p_k_n(0, 3)


# Partitions


def test_partition_shape():
    lam = Partition((3, 2))
    assert lam.size == 5 and lam.first_row == 3
    assert lam.conjugate() == Partition((2, 2, 1))
    assert sorted(lam.contents()) == [-1, 0, 0, 1, 2]
    assert sorted(lam.hooks()) == [1, 1, 2, 3, 4]
    with pytest.raises(ValidationError):
        Partition((1, 2))


def test_partition_enumeration():
    assert [p.parts for p in partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [p.parts for p in partitions(4, 2)] == [(2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions(0)) == [Partition()]


def test_hook_dimensions():
    assert hook_dim(Partition((5,))) == 1
    assert hook_dim(Partition((2, 1))) == 2
    assert hook_dim(Partition((3, 2))) == 5


@pytest.mark.parametrize("n", range(0, 11))
def test_dimension_squares_sum_to_factorial(n):
    assert sum(hook_dim(lam) ** 2 for lam in partitions(n)) == math.factorial(n)
    assert shell_dim_squares(n, n) == math.factorial(n)


# Poissonized oracles


def test_poisson_tail(ctx):
    assert poisson_tail(ctx.mp.zero, 5, ctx) == 0
    eta = ctx.mp.mpf(0.6)
    head = sum(eta ** (2 * n) / ctx.mp.factorial(n) for n in range(10))
    assert abs(poisson_tail(eta, 9, ctx) - (1 - ctx.mp.exp(-eta * eta) * head)) < 1e-60


@pytest.mark.parametrize("k", range(1, 6))
def test_poissonized_lis_matches_toeplitz(ctx, k):
    report = poissonized_p(k, "0.6", 9, ctx)
    assert report.bound < 1e-10
    assert abs(report.value - toeplitz_gap(Bessel.of("0.6"), k, ctx)) <= report.bound + 1e-20


def test_poissonized_lis_at_zero(ctx):
    assert poissonized_p(2, 0, 5, ctx).value == 1


def test_plancherel_single_column(ctx):
    mp = ctx.mp
    report = plancherel_p_oracle(1, "0.8", 30, ctx)
    eta = ctx.convert(Fraction(4, 5))
    expected = mp.exp(-eta * eta) * bessel_i(0, 2 * eta, ctx)
    assert abs(report.value - expected) <= report.bound + 1e-20


def test_plancherel_matches_toeplitz(ctx):
    report = plancherel_p_oracle(2, "0.8", 30, ctx)
    assert abs(report.value - toeplitz_gap(Bessel.of("0.8"), 2, ctx)) <= report.bound + 1e-20
    assert plancherel_p_oracle(3, 0, 10, ctx).value == 1


def test_partition_caps(ctx):
    with pytest.raises(ResourceBoundError):
        plancherel_p_oracle(2, 1, 31, ctx)
    with pytest.raises(ResourceBoundError):
        zmeasure_q_oracle(2, SMALL, 40, ctx)
    with pytest.raises(ValidationError):
        plancherel_p_oracle(-1, 1, 10, ctx)


def test_zmeasure_truncation_converges(ctx):
    coarse = zmeasure_q_oracle(3, SMALL, 20, ctx)
    fine = zmeasure_q_oracle(3, SMALL, 28, ctx)
    assert 0 < coarse.shell_ratio < 1
    assert abs(fine.value - coarse.value) < coarse.bound
    assert "ratio=" in fine.describe()


def test_zmeasure_matches_toeplitz(ctx):
    toeplitz = toeplitz_gaps(SMALL, 6, ctx)
    for k in range(1, 7):
        report = zmeasure_q_oracle(k, SMALL, 28, ctx)
        assert abs(report.value - toeplitz[k]) <= report.bound + 1e-20


def test_zmeasure_small_xi(ctx):
    spec = Hypergeometric.of("0.3", "0.7", "1e-30")
    assert abs(zmeasure_q_oracle(2, spec, 4, ctx).value - 1) < 1e-25


def test_zmeasure_rejects_complex_pair(ctx):
    spec = Hypergeometric.of("1.5+0.5i", "1.5-0.5i", "0.4")
    with pytest.raises(ValidationError):
        zmeasure_q_oracle(2, spec, 10, ctx)
