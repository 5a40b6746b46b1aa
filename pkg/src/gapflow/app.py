"""Application entry point and initialization.

This module provides the command-line startup logic:
- Argument parsing into a validated ``RunConfig``
- Logging and exception hook setup
- Dispatch to the subcommand and mapping of errors to exit codes
"""

from __future__ import annotations

import logging
import sys
from collections.abc import Sequence

from .cli import COMMANDS, RunConfig, build_parser, glue_range_values
from .core.constants import EXIT_VALIDATION
from .core.exceptions import GapflowError, install_exception_hook
from .core.logging_setup import setup_logging
from .core.paths import app_version
from .core.settings import Settings


def run(argv: Sequence[str] | None = None, settings: Settings | None = None) -> int:
    """Parse argv, run one subcommand and return its exit code.

    Library errors are reported as a single line on stderr; the full
    traceback only goes to the log file.
    """
    settings = settings or Settings()
    parser = build_parser()
    try:
        args = parser.parse_args(glue_range_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_VALIDATION

    log_path = setup_logging(
        enable_console=args.verbose or settings.get_debug(),
        log_dir=settings.get_log_dir(),
    )
    install_exception_hook(log_path)
    log = logging.getLogger(__name__)
    log.info("gapflow %s: %s", app_version(), " ".join(argv or sys.argv[1:]))

    try:
        config = RunConfig.from_args(args, settings)
        return COMMANDS[config.command](config)
    except GapflowError as e:
        log.warning("%s failed: %s", args.command, e, exc_info=True)
        print(f"gapflow: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
