"""Dense linear algebra at context precision.

Single determinants and solves go through mpmath's LU with partial pivoting.
``leading_minors`` is the one routine mpmath does not offer: every leading
principal minor of a matrix from one elimination sweep, which is what a gap
table needs (D_{k+1/2} for all k at once).
"""

from __future__ import annotations

from collections.abc import Sequence

from ..core.exceptions import PrecisionInsufficientError
from ..numerics import ArithContext, HPNumber

type Rows = Sequence[Sequence[HPNumber]]


def det(rows: Rows, ctx: ArithContext) -> HPNumber:
    """Determinant by LU with partial pivoting; the empty determinant is 1."""
    if len(rows) == 0:
        return ctx.mp.one
    return ctx.check(ctx.mp.det(ctx.mp.matrix(rows)), "determinant")


def solve(rows: Rows, rhs: Sequence[HPNumber], ctx: ArithContext) -> list[HPNumber]:
    """Solve rows * u = rhs by LU with partial pivoting."""
    mp = ctx.mp
    try:
        u = mp.lu_solve(mp.matrix(rows), mp.matrix(list(rhs)))
    except ZeroDivisionError as e:
        raise PrecisionInsufficientError(f"linear system is numerically singular: {e}") from e
    return [u[i] for i in range(len(rhs))]


def leading_minors(rows: Rows, ctx: ArithContext) -> list[HPNumber]:
    """Leading principal minors det(A[:j, :j]) for j = 0..n.

    Gaussian elimination without pivoting; each pivot is the ratio of two
    consecutive minors, so a vanishing pivot means a vanishing minor.
    """
    n = len(rows)
    a = [[ctx.convert(v) for v in row] for row in rows]
    minors = [ctx.mp.one]
    running = ctx.mp.one
    for j in range(n):
        pivot = a[j][j]
        if pivot == 0:
            raise PrecisionInsufficientError(f"leading minor {j + 1} vanished during elimination")
        running *= pivot
        minors.append(running)
        pivot_row = a[j]
        for i in range(j + 1, n):
            row = a[i]
            factor = row[j] / pivot
            if factor == 0:
                continue
            for col in range(j + 1, n):
                row[col] -= factor * pivot_row[col]
    return minors
