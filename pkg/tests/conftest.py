from __future__ import annotations

import pytest

from gapflow.numerics import ArithContext, ctx_new


@pytest.fixture(autouse=True)
def _isolated_logs(tmp_path, monkeypatch):
    """Keep log files out of the user data directory."""
    monkeypatch.setenv("GAPFLOW_LOG_DIR", str(tmp_path / "logs"))
    for key in ("GAPFLOW_PRECISION", "GAPFLOW_TOL", "GAPFLOW_DEBUG", "GAPFLOW_WORKERS"):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def ctx() -> ArithContext:
    return ctx_new(256)
