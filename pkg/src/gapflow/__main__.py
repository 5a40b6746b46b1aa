"""Package entry point for command-line execution.

Running ``python -m gapflow`` or the ``gapflow`` console script calls
``run()`` from the app module.
"""

from __future__ import annotations

from collections.abc import Sequence

from .app import run


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for the console script; returns the exit code."""
    return run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
