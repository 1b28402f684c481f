"""Report records and serialization for the experiment runner.

Reports are deterministic: given the same configuration and seed, the JSON
output is byte-identical except for the single top-level timestamp field.
CSV tables use full-precision scientific notation; plotting is left to
external tools.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["CheckRecord", "CsvTable", "SuiteReport", "write_report", "write_tables"]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CheckRecord:
    """One verification: the identity it tests, the numbers, the verdict."""

    name: str
    anchor: str  # the mathematical identity or bound under test
    values: dict
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "values": {k: _jsonable(v) for k, v in sorted(self.values.items())},
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class CsvTable:
    """A plot-ready table: name, column header, rows of numbers."""

    name: str
    header: tuple
    rows: tuple


@dataclass
class SuiteReport:
    suite: str
    seed: int
    config: dict
    checks: list = field(default_factory=list)
    tables: list = field(default_factory=list)
    runtime_seconds: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timestamp: str = None) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "n_checks": len(self.checks),
            "n_failed": sum(not c.passed for c in self.checks),
            # runtime is console-only: reports stay byte-identical across
            # runs except for this one timestamp field
            "timestamp": timestamp if timestamp is not None else time.strftime("%Y-%m-%dT%H:%M:%S"),
        }


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):  # numpy scalars
        return _jsonable(v.item())
    return v


def write_report(report: SuiteReport, out_dir: Path) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{report.suite}-report.json"
    path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=False) + "\n")
    return path


def write_tables(report: SuiteReport, out_dir: Path) -> list:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for table in report.tables:
        path = out_dir / f"{report.suite}-{table.name}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(table.header)
            for row in table.rows:
                w.writerow([_fmt(x) for x in row])
        paths.append(path)
    return paths


def _fmt(x):
    if isinstance(x, complex):
        return f"{x.real:.17e}{x.imag:+.17e}j"
    if isinstance(x, float):
        return f"{x:.17e}"
    return x
