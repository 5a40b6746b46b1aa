from __future__ import annotations

import threading
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapflow.core.exceptions import (
    ArithmeticFault,
    DomainError,
    InvalidPrecisionError,
    PoleError,
    PrecisionInsufficientError,
)
from gapflow.numerics import (
    bessel_i,
    bessel_j,
    ctx_new,
    gauss_2f1,
    gauss_2f1_pfaff,
    log_gamma,
    pochhammer,
)

TIGHT = mpmath.mpf(10) ** -60


def test_eps_follows_precision():
    assert ctx_new(256).eps == mpmath.ldexp(1, -224)
    assert ctx_new(64).eps == mpmath.ldexp(1, -32)


def test_precision_floor():
    with pytest.raises(InvalidPrecisionError):
        ctx_new(32)


def test_contexts_are_shared_and_thread_local(ctx):
    assert ctx_new(256) is ctx
    seen = []
    worker = threading.Thread(target=lambda: seen.append(ctx.mp))
    worker.start()
    worker.join()
    assert seen[0] is not ctx.mp
    assert seen[0].prec == ctx.mp.prec == 256


def test_nan_is_an_error(ctx):
    with pytest.raises(ArithmeticFault):
        ctx.check(ctx.mp.nan)


def test_real_part_rejects_large_imaginary_residue(ctx):
    assert ctx.real_part(ctx.mp.mpc(2, ctx.ulp)) == 2
    with pytest.raises(PrecisionInsufficientError):
        ctx.real_part(ctx.mp.mpc(2, "1e-10"))


def test_convert_is_exact_for_fractions(ctx):
    assert ctx.convert(Fraction(3, 10)) == ctx.mp.mpf(3) / 10
    assert ctx.convert((Fraction(3, 2), Fraction(-1, 2))) == ctx.mp.mpc(1.5, -0.5)


def test_format_carries_precision_digits(ctx):
    text = ctx.format(ctx.mp.pi)
    assert text.startswith("3.14159265358979323846")
    assert len(text.replace(".", "")) == ctx.digits


def test_log_gamma_values(ctx):
    assert abs(log_gamma(1, ctx)) < TIGHT
    assert abs(log_gamma(5, ctx) - ctx.mp.log(24)) < TIGHT
    assert abs(log_gamma(ctx.mp.mpf(0.5), ctx) - ctx.mp.log(ctx.mp.pi) / 2) < TIGHT


def test_log_gamma_pole(ctx):
    with pytest.raises(PoleError):
        log_gamma(-3, ctx)


def test_pochhammer(ctx):
    assert pochhammer(3, 0, ctx) == 1
    assert pochhammer(3, 4, ctx) == 3 * 4 * 5 * 6
    assert pochhammer(-2, 3, ctx) == 0


def test_bessel_j_at_zero(ctx):
    assert bessel_j(0, 0, ctx) == 1
    assert bessel_j(3, 0, ctx) == 0


def test_bessel_j_matches_integral_representation(ctx):
    mp = ctx.mp
    integral = mp.quad(lambda t: mp.cos(2 * mp.sin(t)), [0, mp.pi]) / mp.pi
    assert abs(bessel_j(0, 2, ctx) - integral) < TIGHT


@settings(max_examples=20, deadline=None)
@given(n=st.integers(min_value=1, max_value=5), u=st.fractions(min_value=0, max_value=8))
def test_bessel_j_reflection(n, u):
    ctx = ctx_new(128)
    value = ctx.convert(u)
    assert bessel_j(-n, value, ctx) == (-1) ** n * bessel_j(n, value, ctx)


def test_bessel_j_large_argument_keeps_precision(ctx):
    # Alternating series with terms up to ~e^40 / sqrt(40).
    assert abs(bessel_j(1, 40, ctx) - ctx.mp.besselj(1, 40)) < TIGHT


def test_bessel_i_values(ctx):
    mp = ctx.mp
    assert bessel_i(0, 0, ctx) == 1
    assert bessel_i(2, 0, ctx) == 0
    integral = mp.quad(lambda t: mp.exp(2 * mp.cos(t)), [0, mp.pi]) / mp.pi
    assert abs(bessel_i(0, 2, ctx) - integral) < TIGHT
    assert bessel_i(-3, 2, ctx) == bessel_i(3, 2, ctx)


def test_bessel_negative_argument(ctx):
    with pytest.raises(DomainError):
        bessel_i(0, -1, ctx)
    with pytest.raises(DomainError):
        bessel_j(0, -1, ctx)


def test_gauss_2f1_trivial_cases(ctx):
    mp = ctx.mp
    assert gauss_2f1(mp.mpf(0.3), 2, 5, 0, ctx) == 1
    b, c, u = mp.mpf(0.7), mp.mpf(2.5), mp.mpf(0.4)
    assert abs(gauss_2f1(-1, b, c, u, ctx) - (1 - b * u / c)) < TIGHT


def test_gauss_2f1_closed_form(ctx):
    mp = ctx.mp
    u = mp.mpf(0.25)
    half = mp.mpf(0.5)
    expected = mp.asin(mp.sqrt(u)) / mp.sqrt(u)
    assert abs(gauss_2f1(half, half, 3 * half, u, ctx) - expected) < TIGHT


def test_gauss_2f1_rejects_divergent_and_pole(ctx):
    with pytest.raises(DomainError):
        gauss_2f1(ctx.mp.mpf(0.5), 1, 2, ctx.mp.mpf(1.5), ctx)
    with pytest.raises(PoleError):
        gauss_2f1(1, 1, -2, ctx.mp.mpf(0.5), ctx)
    # Terminating before the c pole is fine.
    assert gauss_2f1(-1, 1, -2, ctx.mp.mpf(0.5), ctx) == 1 + ctx.mp.mpf(0.5) / 2


def test_pfaff_matches_direct_series_inside_disc(ctx):
    mp = ctx.mp
    xi = mp.mpf(3) / 10
    direct = gauss_2f1(1, 1, 2, xi / (xi - 1), ctx)
    assert abs(gauss_2f1_pfaff(1, 1, 2, xi, ctx) - direct) < TIGHT
    assert gauss_2f1_pfaff(1, 1, 2, 0, ctx) == 1


def test_pfaff_outside_disc_matches_continuation(ctx):
    mp = ctx.mp
    xi = mp.mpf(85) / 100
    a = mp.mpf(-2.5)
    with pytest.raises(DomainError):
        gauss_2f1(a, a, 1, xi / (xi - 1), ctx)
    value = gauss_2f1_pfaff(a, a, 1, xi, ctx)
    assert abs(value - mp.hyp2f1(a, a, 1, xi / (xi - 1))) < TIGHT * abs(value)
