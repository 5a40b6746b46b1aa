"""Discrete Painleve recurrences for gap probabilities and their limit checks."""

from .dp2 import (
    DP2Scalars,
    DP2State,
    bessel_spec,
    dp2_b_series,
    dp2_gap_series,
    dp2_init,
    dp2_orbit,
    dp2_scalars,
    dp2_step,
    dp2_vsquared_check,
)
from .dp5 import (
    DP5State,
    dp5_back_step,
    dp5_gap_series,
    dp5_init,
    dp5_orbit,
    dp5_step,
    dp5_theorem2_residual,
    ratio_of_differences,
    theorem2_init,
    theorem2_orbit,
    theorem2_step,
)
from .limits import (
    DegenerationRow,
    PIIResidual,
    dp2_log_gap_trend,
    dp2_pii_residual,
    dp5_to_dp2_check,
    dp5_to_dp2_row,
    meixner_spec,
    strictly_decreasing,
)

__all__ = [
    "DP2Scalars",
    "DP2State",
    "DP5State",
    "DegenerationRow",
    "PIIResidual",
    "bessel_spec",
    "dp2_b_series",
    "dp2_gap_series",
    "dp2_init",
    "dp2_log_gap_trend",
    "dp2_orbit",
    "dp2_pii_residual",
    "dp2_scalars",
    "dp2_step",
    "dp2_vsquared_check",
    "dp5_back_step",
    "dp5_gap_series",
    "dp5_init",
    "dp5_orbit",
    "dp5_step",
    "dp5_theorem2_residual",
    "dp5_to_dp2_check",
    "dp5_to_dp2_row",
    "meixner_spec",
    "ratio_of_differences",
    "strictly_decreasing",
    "theorem2_init",
    "theorem2_orbit",
    "theorem2_step",
]
