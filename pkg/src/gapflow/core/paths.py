"""Application paths and version lookup.

The per-user data directory (for the rotating log file) comes from
platformdirs; ``GAPFLOW_LOG_DIR`` overrides it, which is what the test
suite does to keep logs out of the home directory.
"""

from __future__ import annotations

import logging
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from platformdirs import user_data_dir

APP_NAME = "gapflow"
APP_ORG = "gapflow"
LOG_FILE_NAME = "gapflow.log"
_DEFAULT_VERSION = "0.1.0"  # Fallback version if unable to determine


def app_version() -> str:
    """Return the installed version, the source-tree version, or a fallback."""
    try:
        return version(APP_NAME)
    except PackageNotFoundError:
        pass

    # Source checkout: src/gapflow/core/paths.py -> project root
    try:
        pyproject_path = Path(__file__).parents[3] / "pyproject.toml"
        if pyproject_path.exists():
            import tomllib

            with pyproject_path.open("rb") as f:
                data = tomllib.load(f)
                if "project" in data and "version" in data["project"]:
                    return data["project"]["version"]
    except Exception as e:
        logging.getLogger(__name__).debug("Could not read version from pyproject.toml: %s", e)

    return _DEFAULT_VERSION


def app_data_dir() -> Path:
    """Return a per-user app data directory for logs."""
    return Path(user_data_dir(appname=APP_NAME, appauthor=APP_ORG, roaming=True))


def log_file_path(log_dir: Path | None = None) -> Path:
    """Return the log file location, honoring an explicit directory override."""
    return (log_dir or app_data_dir()) / LOG_FILE_NAME
