"""Model specifications: which kernel (and symbol) every routine evaluates.

Parameters are stored exactly as rationals, so a spec means the same thing
at every precision and can be shared freely across threads. Domain checks
run once, at construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..core.exceptions import ValidationError
from ..numerics import ArithContext, HPNumber, HPReal

_COMPLEX_RE = re.compile(
    r"""^\s*
    (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?
    \s*
    (?:(?P<sign>[+-])\s*(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?
    \s*$""",
    re.VERBOSE,
)


def exact(value: Any) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float.

    Floats go through their shortest repr so that 0.3 means 3/10.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"not a number: {value!r}") from e


@dataclass(frozen=True, slots=True)
class ExactComplex:
    """Exact complex parameter re + im*i."""

    re: Fraction
    im: Fraction = Fraction(0)

    @classmethod
    def parse(cls, value: Any) -> ExactComplex:
        """Accept real numbers, Python complex, or strings like "1.5+0.5i"."""
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return cls(exact(value.real), exact(value.imag))
        if not isinstance(value, str):
            return cls(exact(value))
        match = _COMPLEX_RE.match(value.replace("I", "i").replace("J", "j"))
        if match is None or (match["re"] is None and match["sign"] is None):
            raise ValidationError(f"not a real or complex number: {value!r}")
        re_part = exact(match["re"]) if match["re"] is not None else Fraction(0)
        im_part = Fraction(0)
        if match["sign"] is not None:
            im_part = exact(match["im"]) if match["im"] else Fraction(1)
            if match["sign"] == "-":
                im_part = -im_part
        return cls(re_part, im_part)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> ExactComplex:
        return ExactComplex(self.re, -self.im)

    def value(self, ctx: ArithContext) -> HPNumber:
        if self.is_real:
            return ctx.real(self.re)
        return ctx.mp.mpc(ctx.real(self.re), ctx.real(self.im))

    def __str__(self) -> str:
        if self.is_real:
            return _fmt(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{_fmt(self.re)}{sign}{_fmt(abs(self.im))}i"


def _fmt(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    text = repr(float(value))
    return text if Fraction(text) == value else str(value)


@dataclass(frozen=True, slots=True)
class Bessel:
    """Poissonized Plancherel model; discrete Bessel kernel with parameter eta."""

    eta: Fraction

    def __post_init__(self) -> None:
        if self.eta <= 0:
            raise ValidationError(f"Bessel eta must be > 0, got {_fmt(self.eta)}")

    @classmethod
    def of(cls, eta: Any) -> Bessel:
        return cls(exact(eta))

    @property
    def name(self) -> str:
        return "bessel"

    def eta_value(self, ctx: ArithContext) -> HPReal:
        return ctx.real(self.eta)

    def describe(self) -> dict[str, str]:
        return {"kernel": "bessel", "eta": _fmt(self.eta)}


@dataclass(frozen=True, slots=True)
class Hypergeometric:
    """z-measure model; discrete 2F1 kernel with parameters (z, z', xi).

    Accepted parameter families:
    - complex-conjugate pair z' = conj(z) with Im z != 0
    - real z, z' strictly between the same pair of consecutive integers
    - real z = z' non-integer
    - real z = z' = N a positive integer (Meixner case)
    """

    z: ExactComplex
    zprime: ExactComplex
    xi: Fraction

    def __post_init__(self) -> None:
        if not 0 < self.xi < 1:
            raise ValidationError(f"xi must lie in (0, 1), got {_fmt(self.xi)}")
        z, zp = self.z, self.zprime
        if not (z.is_real and zp.is_real):
            if z.im == 0 or zp != z.conjugate():
                raise ValidationError(
                    f"complex parameters must form a conjugate pair, got z={z}, z'={zp}"
                )
            return
        a, b = z.re, zp.re
        if a == b:
            if a.denominator == 1 and a <= 0:
                raise ValidationError(f"integer z = z' must be positive, got {a}")
            return
        if a.denominator == 1 or b.denominator == 1 or math.floor(a) != math.floor(b):
            raise ValidationError(
                f"real z, z' must lie strictly between the same consecutive integers, "
                f"got z={z}, z'={zp}"
            )

    @classmethod
    def of(cls, z: Any, zprime: Any, xi: Any) -> Hypergeometric:
        return cls(ExactComplex.parse(z), ExactComplex.parse(zprime), exact(xi))

    @property
    def name(self) -> str:
        return "hyp"

    @property
    def is_conjugate_pair(self) -> bool:
        return not self.z.is_real

    @property
    def is_meixner(self) -> bool:
        return self.z.is_real and self.z == self.zprime and self.z.re.denominator == 1

    def values(self, ctx: ArithContext) -> tuple[HPNumber, HPNumber, HPReal]:
        """(z, z', xi) as context numbers; real pairs stay real."""
        return self.z.value(ctx), self.zprime.value(ctx), ctx.real(self.xi)

    def zzp(self, ctx: ArithContext) -> HPReal:
        """z z' (real and positive for every accepted family)."""
        z, zp, _ = self.values(ctx)
        return ctx.real_part(z * zp, "z z'")

    def describe(self) -> dict[str, str]:
        return {
            "kernel": "hyp",
            "z": str(self.z),
            "zprime": str(self.zprime),
            "xi": _fmt(self.xi),
        }


type KernelSpec = Bessel | Hypergeometric
