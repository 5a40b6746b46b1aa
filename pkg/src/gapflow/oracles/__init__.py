"""Brute-force oracles: permutation enumeration and partition sums."""

from .partitions import (
    OracleReport,
    Partition,
    hook_dim,
    partitions,
    plancherel_p_oracle,
    poisson_tail,
    shell_dim_squares,
    zmeasure_q_oracle,
)
from .permutations import lis_histogram, lis_length, p_k_n, p_k_n_rsk, poissonized_p

__all__ = [
    "OracleReport",
    "Partition",
    "hook_dim",
    "lis_histogram",
    "lis_length",
    "p_k_n",
    "p_k_n_rsk",
    "partitions",
    "plancherel_p_oracle",
    "poisson_tail",
    "poissonized_p",
    "shell_dim_squares",
    "zmeasure_q_oracle",
]
