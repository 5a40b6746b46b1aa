"""Precision-controlled arithmetic contexts.

Every ``ArithContext`` hands out a private ``mpmath.MPContext`` per thread.
mpmath raises the precision of its context temporarily inside routines such
as ``det`` and ``lu_solve``, so one shared instance would leak those changes
into other workers. Routines that need extra working bits obtain a second,
boosted context instead of raising the precision of an existing one.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

import mpmath
from mpmath import mpc, mpf

from ..core.constants import (
    ASSERTION_FACTOR,
    DEGENERACY_FACTOR,
    GUARD_BITS,
    IMAGINARY_FACTOR,
    MIN_PRECISION_BITS,
)
from ..core.exceptions import ArithmeticFault, InvalidPrecisionError, PrecisionInsufficientError

type HPReal = mpf
type HPComplex = mpc
type HPNumber = mpf | mpc
type RealLike = int | float | str | Fraction | mpf


def _build_mp(precision_bits: int) -> mpmath.MPContext:
    mp = mpmath.MPContext()
    mp.prec = precision_bits
    return mp


@dataclass(frozen=True)
class ArithContext:
    """Arithmetic environment at a fixed binary precision.

    ``eps`` is the comparison tolerance ``2^(guard - precision_bits)``; it is
    deliberately coarser than the unit roundoff so that identities checked
    "to eps" leave room for accumulated rounding.
    """

    precision_bits: int
    guard: int = GUARD_BITS
    _local: threading.local = field(
        default_factory=threading.local, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.precision_bits < MIN_PRECISION_BITS:
            raise InvalidPrecisionError(
                f"precision_bits must be >= {MIN_PRECISION_BITS}, got {self.precision_bits}"
            )

    @property
    def mp(self) -> mpmath.MPContext:
        """This thread's mpmath context at precision_bits."""
        mp = getattr(self._local, "mp", None)
        if mp is None:
            mp = _build_mp(self.precision_bits)
            self._local.mp = mp
        return mp

    @property
    def eps(self) -> HPReal:
        return self.mp.ldexp(self.mp.one, self.guard - self.precision_bits)

    @property
    def ulp(self) -> HPReal:
        """Unit roundoff 2^(-precision_bits)."""
        return self.mp.ldexp(self.mp.one, -self.precision_bits)

    @property
    def digits(self) -> int:
        """Significant decimal digits carried by this precision."""
        return int(self.precision_bits * math.log10(2))

    @property
    def degeneracy_window(self) -> HPReal:
        return DEGENERACY_FACTOR * self.eps

    def boosted(self, extra_bits: int) -> ArithContext:
        return ctx_new(self.precision_bits + max(0, extra_bits))

    def doubled(self) -> ArithContext:
        return ctx_new(2 * self.precision_bits)

    # Conversion

    def real(self, value: RealLike) -> HPReal:
        """Convert to an mpf of this context; Fractions are rounded once."""
        if isinstance(value, Fraction):
            return self.mp.mpf(value.numerator) / value.denominator
        return self.mp.mpf(value)

    def convert(self, value: Any) -> HPNumber:
        """Convert any real or complex scalar (from any context) into this one."""
        if isinstance(value, Fraction):
            return self.real(value)
        if isinstance(value, tuple):
            re, im = value
            return self.mp.mpc(self.real(re), self.real(im))
        return self.mp.convert(value)

    # Checks

    def check(self, value: HPNumber, what: str = "value") -> HPNumber:
        """Return value unchanged, or raise if it is NaN or infinite."""
        if not self.mp.isfinite(value):
            raise ArithmeticFault(f"{what} is not finite: {value}")
        return value

    def is_near(self, value: HPNumber, forbidden: HPNumber | int = 0) -> bool:
        """True when value lies within the degeneracy window of forbidden."""
        scale = max(self.mp.one, abs(forbidden))
        return abs(value - forbidden) <= self.degeneracy_window * scale

    def agrees(self, a: HPNumber, b: HPNumber, factor: int = ASSERTION_FACTOR) -> bool:
        scale = max(self.mp.one, abs(a), abs(b))
        return abs(a - b) <= factor * self.eps * scale

    def real_part(self, value: HPNumber, what: str = "value") -> HPReal:
        """Drop a residual imaginary part that must vanish mathematically."""
        value = self.check(value, what)
        imag = self.mp.im(value)
        if imag == 0:
            return self.mp.re(value)
        scale = max(self.mp.one, abs(value))
        if abs(imag) > IMAGINARY_FACTOR * self.eps * scale:
            raise PrecisionInsufficientError(
                f"{what} has imaginary part {self.mp.nstr(imag, 5)} above tolerance"
            )
        return self.mp.re(value)

    # Formatting

    def format(self, value: HPNumber) -> str:
        """Decimal string with precision-many significant digits."""
        return self.mp.nstr(value, self.digits, strip_zeros=False, min_fixed=-4, max_fixed=6)


@lru_cache(maxsize=None)
def ctx_new(precision_bits: int) -> ArithContext:
    """Return the (shared, immutable) context for ``precision_bits``."""
    return ArithContext(precision_bits)
