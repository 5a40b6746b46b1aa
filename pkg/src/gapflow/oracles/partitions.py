"""Partition sums: brute-force gap probabilities independent of any determinant.

- ``Partition`` with cells, contents and hook lengths
- ``hook_dim`` via the hook length formula (exact integers)
- Plancherel and z-measure sums restricted to lambda_1 <= k, grouped by |lambda|
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from ..core.constants import PARTITION_SIZE_CAP
from ..core.exceptions import (
    InvariantViolationError,
    NonConvergenceError,
    ResourceBoundError,
    ValidationError,
)
from ..kernels import Hypergeometric, exact
from ..numerics import ArithContext, HPReal

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Partition:
    """Weakly decreasing positive parts; () is the empty partition."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(p <= 0 for p in self.parts):
            raise ValidationError(f"partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:], strict=False)):
            raise ValidationError(f"partition parts must be weakly decreasing: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def first_row(self) -> int:
        return self.parts[0] if self.parts else 0

    def conjugate(self) -> Partition:
        return Partition(
            tuple(sum(1 for p in self.parts if p > j) for j in range(self.first_row))
        )

    def cells(self) -> Iterator[tuple[int, int]]:
        """(i, j), 1-based row and column of every box of the Young diagram."""
        for i, part in enumerate(self.parts, start=1):
            for j in range(1, part + 1):
                yield i, j

    def contents(self) -> Iterator[int]:
        return (j - i for i, j in self.cells())

    def hooks(self) -> Iterator[int]:
        columns = self.conjugate().parts
        for i, j in self.cells():
            yield (self.parts[i - 1] - j) + (columns[j - 1] - i) + 1


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n with parts <= max_part, in reverse lexicographic order."""
    if n < 0:
        raise ValidationError(f"cannot partition a negative number: {n}")
    limit = n if max_part is None else min(n, max_part)

    def build(remaining: int, largest: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in build(remaining - part, part):
                yield (part, *rest)

    for parts in build(n, limit):
        yield Partition(parts)


def hook_dim(lam: Partition) -> int:
    """Number of standard Young tableaux of shape lam."""
    return math.factorial(lam.size) // math.prod(lam.hooks())


@lru_cache(maxsize=None)
def shell_dim_squares(n: int, k: int) -> int:
    """Sum of (dim lambda)^2 over |lambda| = n with lambda_1 <= k."""
    if k >= n:
        return math.factorial(n)
    return sum(hook_dim(lam) ** 2 for lam in partitions(n, k))


@dataclass(frozen=True)
class OracleReport:
    """An oracle value with its truncation bound.

    ``bound`` is rigorous for the Poisson-weighted sums and an empirical
    geometric estimate for the z-measure sum.
    """

    value: HPReal
    bound: HPReal
    size: int
    last_shell: HPReal | None = None
    shell_ratio: HPReal | None = None

    def describe(self) -> str:
        parts = [f"size={self.size}"]
        if self.shell_ratio is not None:
            parts.append(f"ratio={float(self.shell_ratio):.3g}")
        return ";".join(parts)


def _check_size(size_max: int) -> None:
    if size_max < 0:
        raise ValidationError(f"size_max must be >= 0, got {size_max}")
    if size_max > PARTITION_SIZE_CAP:
        raise ResourceBoundError(
            f"size_max={size_max} exceeds the partition enumeration cap of {PARTITION_SIZE_CAP}"
        )


def _check_k(k: int) -> None:
    if k < 0:
        raise ValidationError(f"k must be >= 0, got {k}")


def poisson_tail(eta: HPReal, n_max: int, ctx: ArithContext) -> HPReal:
    """e^(-eta^2) sum_{n > n_max} eta^(2n)/n!, the Poisson(eta^2) upper tail."""
    if eta == 0:
        return ctx.mp.zero
    return ctx.mp.gammainc(n_max + 1, 0, eta * eta, regularized=True)


def plancherel_p_oracle(k: int, eta: Any, size_max: int, ctx: ArithContext) -> OracleReport:
    """Poissonized Plancherel mass of {lambda_1 <= k}, summed up to |lambda| = size_max.

    The bound is the Poisson tail beyond size_max, since each full shell sums to
    eta^(2n)/n!.
    """
    _check_k(k)
    _check_size(size_max)
    eta_exact = exact(eta)
    if eta_exact < 0:
        raise ValidationError(f"eta must be >= 0, got {eta}")
    mp = ctx.mp
    value = ctx.real(eta_exact)
    square = value * value
    total = mp.zero
    shell = mp.zero
    for n in range(size_max + 1):
        weight = mp.power(square, n) / mp.factorial(n) ** 2
        shell = weight * shell_dim_squares(n, k)
        total += shell
    prefactor = mp.exp(-square)
    return OracleReport(
        prefactor * total,
        poisson_tail(value, size_max, ctx),
        size_max,
        last_shell=prefactor * shell,
    )


def _content_weight(lam: Partition, z: HPReal, zp: HPReal, ctx: ArithContext) -> HPReal:
    weight = ctx.mp.one
    for c in lam.contents():
        weight *= (c + z) * (c + zp)
    if weight < 0:
        raise InvariantViolationError(
            f"content product for {lam.parts} is negative ({ctx.mp.nstr(weight, 5)})"
        )
    return weight


def zmeasure_q_oracle(
    k: int, spec: Hypergeometric, size_max: int, ctx: ArithContext
) -> OracleReport:
    """z-measure mass of {lambda_1 <= k}, summed up to |lambda| = size_max.

    The bound extrapolates the last two shells geometrically.
    """
    _check_k(k)
    _check_size(size_max)
    if spec.is_conjugate_pair:
        raise ValidationError("the z-measure oracle needs a real parameter pair")
    mp = ctx.mp
    z, zp, xi = spec.values(ctx)
    prefactor = mp.power(1 - xi, z * zp)

    shells: list[HPReal] = []
    for n in range(size_max + 1):
        scale = mp.power(xi, n) / mp.factorial(n) ** 2
        shell = mp.zero
        for lam in partitions(n, k):
            shell += _content_weight(lam, z, zp, ctx) * hook_dim(lam) ** 2
        shells.append(prefactor * scale * shell)

    value = mp.fsum(shells)
    last = shells[-1]
    previous = shells[-2] if len(shells) > 1 else mp.zero
    ratio = last / previous if previous else mp.zero
    if ratio >= 1:
        raise NonConvergenceError(
            f"z-measure shells are not decaying at |lambda|={size_max} "
            f"(ratio {mp.nstr(ratio, 5)}); raise size_max"
        )
    bound = last * ratio / (1 - ratio)
    log.debug("z-measure oracle k=%d size=%d ratio=%s", k, size_max, mp.nstr(ratio, 5))
    return OracleReport(value, bound, size_max, last_shell=last, shell_ratio=ratio)
