"""Environment-backed settings.

Settings come from environment variables so that scripted runs can pin
precision and tolerances without repeating flags. Keys are centralized in
``SettingsKeys``; getters fall back to defaults on unparsable values and
log what they ignored. Command-line flags always win over these values.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

from .constants import DEFAULT_PRECISION_BITS, DEFAULT_TOL, DEFAULT_WORKERS, MAX_WORKERS

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SettingsKeys:
    """Centralize environment variable names used by the application."""

    precision: str = "GAPFLOW_PRECISION"
    tol: str = "GAPFLOW_TOL"
    log_dir: str = "GAPFLOW_LOG_DIR"
    debug: str = "GAPFLOW_DEBUG"
    workers: str = "GAPFLOW_WORKERS"


class Settings:
    """Typed view over an environment mapping."""

    def __init__(self, environ: Mapping[str, str] | None = None) -> None:
        self._env = os.environ if environ is None else environ
        self.keys = SettingsKeys()

    def get_str(self, key: str, default: str = "") -> str:
        value = self._env.get(key)
        return value.strip() if value is not None else default

    def get_precision(self) -> int:
        """Default precision in bits; range checks happen in RunConfig."""
        raw = self.get_str(self.keys.precision)
        if not raw:
            return DEFAULT_PRECISION_BITS
        try:
            return int(raw)
        except ValueError:
            log.warning("Ignoring %s=%r (not an integer)", self.keys.precision, raw)
            return DEFAULT_PRECISION_BITS

    def get_tol(self) -> str:
        """Default tolerance as a decimal string (parsed at working precision)."""
        raw = self.get_str(self.keys.tol)
        if not raw:
            return DEFAULT_TOL
        try:
            float(raw)
        except ValueError:
            log.warning("Ignoring %s=%r (not a number)", self.keys.tol, raw)
            return DEFAULT_TOL
        return raw

    def get_log_dir(self) -> Path | None:
        raw = self.get_str(self.keys.log_dir)
        return Path(raw).expanduser() if raw else None

    def get_debug(self) -> bool:
        return self.get_str(self.keys.debug).lower() in ("1", "true", "yes")

    def get_workers(self) -> int:
        """Worker threads for batched work, clamped to [1, MAX_WORKERS]."""
        raw = self.get_str(self.keys.workers)
        if not raw:
            return DEFAULT_WORKERS
        try:
            return max(1, min(MAX_WORKERS, int(raw)))
        except ValueError:
            log.warning("Ignoring %s=%r (not an integer)", self.keys.workers, raw)
            return DEFAULT_WORKERS
