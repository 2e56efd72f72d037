"""Typed view of the experiment harness's aggregate CSV.

Schema: axis_value,method,mean_r_reported,mean_r_true,trials with one row per
(axis value, method). Plot data is read straight from these rows; nothing is
recomputed.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

COLUMNS = ("axis_value", "method", "mean_r_reported", "mean_r_true", "trials")

METRIC_COLUMNS = {"reported": "mean_r_reported", "true": "mean_r_true"}


class SchemaError(ValueError):
    """The CSV does not match the aggregate schema."""


@dataclass(frozen=True)
class AggRow:
    axis_value: float
    method: str
    mean_r_reported: float
    mean_r_true: float
    trials: int


@dataclass(frozen=True)
class AggregateTable:
    rows: tuple

    def __post_init__(self):
        seen = set()
        for row in self.rows:
            key = (row.axis_value, row.method)
            if key in seen:
                raise SchemaError(f"duplicate (axis_value, method) row {key}")
            seen.add(key)
            for col in ("axis_value", "mean_r_reported", "mean_r_true"):
                if not math.isfinite(getattr(row, col)):
                    raise SchemaError(f"non-finite {col} in row {key}")

    @classmethod
    def from_text(cls, text: str) -> "AggregateTable":
        reader = csv.DictReader(io.StringIO(text))
        header = tuple(reader.fieldnames or ())
        missing = [c for c in COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"missing aggregate columns: {missing}")
        rows = []
        for line in reader:
            try:
                rows.append(AggRow(
                    axis_value=float(line["axis_value"]),
                    method=line["method"],
                    mean_r_reported=float(line["mean_r_reported"]),
                    mean_r_true=float(line["mean_r_true"]),
                    trials=int(line["trials"]),
                ))
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"bad aggregate row {line!r}: {exc}") from exc
        return cls(tuple(rows))

    @classmethod
    def from_file(cls, path) -> "AggregateTable":
        return cls.from_text(Path(path).read_text())

    def methods(self) -> list[str]:
        out = []
        for row in self.rows:
            if row.method not in out:
                out.append(row.method)
        return out

    def axis_values(self) -> list[float]:
        return sorted({row.axis_value for row in self.rows})

    def only_method(self, method: str) -> "AggregateTable":
        return AggregateTable(tuple(r for r in self.rows if r.method == method))

    def series(self, method: str, metric: str) -> tuple[list[float], list[float]]:
        """(axis values, metric values) for one method, sorted by axis."""
        col = METRIC_COLUMNS[metric]
        rows = sorted((r for r in self.rows if r.method == method),
                      key=lambda r: r.axis_value)
        return [r.axis_value for r in rows], [getattr(r, col) for r in rows]
