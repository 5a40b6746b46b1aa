"""The half-integer lattice Z' = Z + 1/2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core.exceptions import ValidationError
from ..numerics import ArithContext, HPReal


@dataclass(frozen=True, order=True, slots=True)
class HalfInt:
    """Lattice point n + 1/2, stored by its integer part.

    Gap tables are indexed by k with s = k + 1/2, so ``HalfInt(k)`` is the
    lattice point whose gap probability is the table entry k.
    """

    n: int

    @classmethod
    def parse(cls, text: str) -> HalfInt:
        """Parse "21/2", "10.5" or "-1/2"."""
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValidationError(f"not a half-integer: {text!r}") from e
        if value.denominator != 2:
            raise ValidationError(f"not a half-integer: {text!r}")
        return cls((value.numerator - 1) // 2)

    @property
    def k(self) -> int:
        return self.n

    @property
    def is_positive(self) -> bool:
        return self.n >= 0

    def as_fraction(self) -> Fraction:
        return Fraction(2 * self.n + 1, 2)

    def value(self, ctx: ArithContext) -> HPReal:
        return ctx.mp.mpf(self.n) + ctx.mp.mpf(0.5)

    def __add__(self, other: int) -> HalfInt:
        if isinstance(other, bool) or not isinstance(other, int):
            return NotImplemented
        return HalfInt(self.n + other)

    __radd__ = __add__

    def __sub__(self, other: int | HalfInt) -> HalfInt | int:
        if isinstance(other, HalfInt):
            return self.n - other.n
        if isinstance(other, bool) or not isinstance(other, int):
            return NotImplemented
        return HalfInt(self.n - other)

    def __str__(self) -> str:
        return f"{2 * self.n + 1}/2"


HALF = HalfInt(0)


def half_range(start: HalfInt, stop: HalfInt) -> list[HalfInt]:
    """Lattice points start, start+1, ..., stop inclusive."""
    return [HalfInt(n) for n in range(start.n, stop.n + 1)]
