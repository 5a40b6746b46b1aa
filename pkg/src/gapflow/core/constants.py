"""Numerical and application-wide constants.

This module centralizes tolerances, caps and defaults used across the
package to avoid scattering magic numbers through the numeric code.
"""

# Precision
MIN_PRECISION_BITS = 64  # Floor accepted by ctx_new and the CLI
MAX_PRECISION_BITS = 16384  # Ceiling accepted by the CLI
DEFAULT_PRECISION_BITS = 256
GUARD_BITS = 32  # eps = 2^(-precision_bits + GUARD_BITS)
DEFAULT_TOL = "1e-20"

# Series summation
SERIES_RUN_LENGTH = 20  # Consecutive negligible terms before a series stops
MAX_SERIES_TERMS = 200_000

# Guards
DEGENERACY_FACTOR = 10**6  # Forbidden-value window is DEGENERACY_FACTOR * eps
IMAGINARY_FACTOR = 10**6  # Allowed residual imaginary part, in units of eps
ASSERTION_FACTOR = 10**6  # Internal identity checks, in units of eps

# Fredholm truncation
FREDHOLM_HARD_CAP = 4096
HYP_INITIAL_TRUNCATION = 10
BESSEL_TRUNCATION_PAD = 10  # Bessel start is ceil(2*e*eta) + pad

# Oracles
PERMUTATION_CAP = 9  # n! enumeration bound
PARTITION_SIZE_CAP = 30

# Painleve II scaling
PII_PRECISION_PER_STEP = 4  # Extra bits per dPII step before validation
PII_MAX_DOUBLINGS = 4

# Workers
DEFAULT_WORKERS = 4
MAX_WORKERS = 64

# Exit codes
EXIT_OK = 0
EXIT_THRESHOLD = 1
EXIT_VALIDATION = 2
EXIT_DEGENERACY = 3
