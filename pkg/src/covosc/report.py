"""Machine-readable run reports: one table plus a list of pass/fail checks."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

FLOAT_FORMAT = ".17g"


@dataclass
class Check:
    name: str
    passed: bool
    max_deviation: float | None = None
    tolerance: float | None = None

    def to_dict(self):
        return {"name": self.name, "pass": bool(self.passed),
                "max_deviation": self.max_deviation, "tolerance": self.tolerance}


def check_within(name, deviation, tolerance):
    deviation = float(deviation)
    return Check(name, bool(deviation <= tolerance), deviation, tolerance)


@dataclass
class Report:
    command: str
    parameters: dict
    columns: list
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def all_pass(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        out = {
            "command": self.command,
            "parameters": self.parameters,
            "columns": list(self.columns),
            "rows": [[_plain(v) for v in row] for row in self.rows],
            "checks": [c.to_dict() for c in self.checks],
            "all_pass": self.all_pass,
        }
        out.update(self.extra)
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()

    def render(self, fmt):
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")


def _plain(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    v = float(v)
    return v if math.isfinite(v) else str(v)


def format_value(v):
    """17 significant digits for floats so every value round-trips exactly."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, str)) or v is None:
        return "" if v is None else str(v)
    return format(float(v), FLOAT_FORMAT)
