"""Command-line front end: configuration, argument parsing and subcommands."""

from .commands import COMMANDS, cmd_bench, cmd_compare, cmd_compute, cmd_limits, cmd_oracle
from .config import (
    RunConfig,
    build_parser,
    glue_range_values,
    parse_fraction_list,
    parse_grid,
    parse_int_list,
)

__all__ = [
    "COMMANDS",
    "RunConfig",
    "build_parser",
    "cmd_bench",
    "cmd_compare",
    "cmd_compute",
    "cmd_limits",
    "cmd_oracle",
    "glue_range_values",
    "parse_fraction_list",
    "parse_grid",
    "parse_int_list",
]
