"""Permutation enumeration for the longest increasing subsequence law."""

from __future__ import annotations

import itertools
import logging
import math
from bisect import bisect_left
from collections import Counter
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache
from typing import Any

from ..core.constants import PERMUTATION_CAP
from ..core.exceptions import ResourceBoundError, ValidationError
from ..kernels import exact
from ..numerics import ArithContext
from .partitions import OracleReport, poisson_tail, shell_dim_squares

log = logging.getLogger(__name__)


def lis_length(perm: Sequence[int]) -> int:
    """Length of the longest increasing subsequence, by patience sorting."""
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValidationError(f"not a permutation of 1..{len(perm)}: {tuple(perm)}")
    piles: list[int] = []
    for value in perm:
        i = bisect_left(piles, value)
        if i == len(piles):
            piles.append(value)
        else:
            piles[i] = value
    return len(piles)


def _check(k: int, n: int) -> None:
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    if n > PERMUTATION_CAP:
        raise ResourceBoundError(
            f"n={n} exceeds the permutation enumeration cap of {PERMUTATION_CAP}"
        )


@lru_cache(maxsize=None)
def lis_histogram(n: int) -> Counter[int]:
    """Number of permutations of 1..n with each LIS length."""
    _check(1, n)
    counts = Counter(lis_length(p) for p in itertools.permutations(range(1, n + 1)))
    log.debug("Enumerated %d permutations of size %d", math.factorial(n), n)
    return counts


def p_k_n(k: int, n: int) -> Fraction:
    """P(LIS <= k) under the uniform measure on S_n, exactly."""
    _check(k, n)
    counts = lis_histogram(n)
    return Fraction(sum(c for length, c in counts.items() if length <= k), math.factorial(n))


def p_k_n_rsk(k: int, n: int) -> Fraction:
    """Same probability from sum of (dim lambda)^2 over lambda_1 <= k."""
    _check(k, n)
    return Fraction(shell_dim_squares(n, k), math.factorial(n))


def poissonized_p(k: int, eta: Any, n_max: int, ctx: ArithContext) -> OracleReport:
    """e^(-eta^2) sum_{n <= n_max} eta^(2n)/n! p_k^n, plus the Poisson tail beyond n_max."""
    _check(k, n_max)
    eta_exact = exact(eta)
    if eta_exact < 0:
        raise ValidationError(f"eta must be >= 0, got {eta}")
    mp = ctx.mp
    value = ctx.real(eta_exact)
    square = value * value
    terms = []
    for n in range(n_max + 1):
        p = p_k_n(k, n)
        terms.append(mp.power(square, n) / mp.factorial(n) * p.numerator / p.denominator)
    total = mp.exp(-square) * mp.fsum(terms)
    return OracleReport(total, poisson_tail(value, n_max, ctx), n_max)
