"""gapflow - gap probabilities of discrete Bessel and 2F1 point processes.

Three independent routes to the probability D_{k+1/2} that no particle
lies at or beyond k + 1/2:
- Toeplitz determinants of the model symbols
- Fredholm determinants of the discrete kernels
- discrete Painleve II / V recurrences seeded by special functions

plus brute-force oracles (permutations, partitions) and scaling-limit
trend checks. See README.md for the command-line interface.
"""

from .core.paths import app_version

__version__ = app_version()

__all__ = ["__version__"]
