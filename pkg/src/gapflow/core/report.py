"""Tabular output for the command-line front end.

This module provides:
- ``Report``: ordered columns, string-valued rows and a config echo
- CSV writing and reading (UTF-8, LF line endings, byte-stable round trip)
- JSON writing with every number as a decimal string
- ``emit`` to stdout or to a file

Numbers never pass through binary floats here; callers format them with
``ArithContext.format`` before adding a row.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import sys
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path
from typing import TextIO

from .exceptions import ValidationError

log = logging.getLogger(__name__)

GAP_COLUMNS = ("k", "value", "method", "precision_bits", "meta")


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


@dataclass
class Report:
    """Rows of strings under fixed columns."""

    columns: list[str]
    rows: list[dict[str, str]] = field(default_factory=list)
    config: dict[str, str] = field(default_factory=dict)

    def add(self, values: Mapping[str, object]) -> None:
        unknown = set(values) - set(self.columns)
        if unknown:
            raise ValidationError(f"unknown report columns: {sorted(unknown)}")
        self.rows.append({c: str(values.get(c, "")) for c in self.columns})


def write_csv(report: Report, stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=report.columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(report.rows)


def read_csv(stream: TextIO) -> Report:
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise ValidationError("CSV input has no header row")
    return Report(list(reader.fieldnames), [dict(row) for row in reader])


def write_json(report: Report, stream: TextIO) -> None:
    json.dump({"config": report.config, "rows": report.rows}, stream, indent=2)
    stream.write("\n")


def render(report: Report, fmt: OutputFormat | str) -> str:
    buffer = io.StringIO()
    if OutputFormat(fmt) is OutputFormat.JSON:
        write_json(report, buffer)
    else:
        write_csv(report, buffer)
    return buffer.getvalue()


def emit(report: Report, fmt: OutputFormat | str, out: Path | None = None) -> None:
    """Write the report to out (UTF-8, LF) or to stdout."""
    text = render(report, fmt)
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="") as f:
        f.write(text)
    log.info("Wrote %d rows to %s", len(report.rows), out)
