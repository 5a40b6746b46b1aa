"""Error hierarchy and global exception handling.

Every failure the library can signal derives from ``GapflowError`` and
carries the exit code the command-line front end reports for it:

- 1: numerical failure (precision, convergence, broken invariant)
- 2: validation or resource bound
- 3: degeneracy guard (non-generic parameters)

``install_exception_hook`` is installed early by the CLI so that anything
escaping the normal error mapping still ends up in the log file.
"""

from __future__ import annotations

import logging
import sys
import traceback
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from .constants import EXIT_DEGENERACY, EXIT_THRESHOLD, EXIT_VALIDATION


class GapflowError(Exception):
    """Base class for all errors raised by gapflow."""

    exit_code: int = EXIT_THRESHOLD


class ValidationError(GapflowError, ValueError):
    """Invalid parameters, configuration or input data."""

    exit_code = EXIT_VALIDATION


class InvalidPrecisionError(ValidationError):
    """Requested precision is below the supported floor or above the ceiling."""


class ResourceBoundError(GapflowError):
    """Request exceeds an enumeration or size cap."""

    exit_code = EXIT_VALIDATION


class PoleError(ValidationError):
    """Argument hits a pole of Gamma or of a hypergeometric c-parameter."""


class DomainError(ValidationError):
    """Argument outside the domain where the evaluator is defined."""


class ArithmeticFault(GapflowError, ArithmeticError):
    """NaN or overflow produced where a finite value was required."""


class PrecisionInsufficientError(GapflowError):
    """Result cannot be trusted at the working precision."""


class NonConvergenceError(GapflowError):
    """An adaptive loop hit its hard cap without meeting its stopping rule."""


class InvariantViolationError(GapflowError):
    """A mathematical invariant failed (positivity, monotonicity, identity)."""


class DegeneracyError(GapflowError):
    """A genericity guard is within tolerance of its forbidden value."""

    exit_code = EXIT_DEGENERACY

    def __init__(
        self,
        location: str,
        value: Any = None,
        parameters: Mapping[str, Any] | None = None,
    ) -> None:
        self.location = location
        self.value = value
        self.parameters = dict(parameters or {})
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        super().__init__(f"degeneracy at {location} (value={value}; {params})")


class DegenerateDifferenceError(DegeneracyError):
    """Ratio difference vanished so the dPV gap recursion cannot divide by it."""


def install_exception_hook(log_path: Path | None = None) -> None:
    """Log uncaught exceptions and print a one-line summary to stderr.

    Args:
        log_path: Log file shown to the user; purely informational.
    """
    log = logging.getLogger(__name__)

    def excepthook(exc_type, exc, tb):  # type: ignore[no-untyped-def]
        details = "".join(traceback.format_exception(exc_type, exc, tb))
        log.error("Unhandled exception:\n%s", details)
        where = f" (details in {log_path})" if log_path else ""
        print(f"gapflow: internal error: {exc}{where}", file=sys.stderr)

    sys.excepthook = excepthook
