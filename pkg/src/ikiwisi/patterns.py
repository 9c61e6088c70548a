"""Heatmap pattern detection.

Evaluators do not read a binary heatmap cell by cell; they react to its
shapes.  Four pattern classes matter, detected per row on the displayed
booleans (true = "exists" = green in the default palette):

* **uni-color rows** — the whole row one color; read as confident claims.
* **single outliers** — a lone cell whose left and right neighbors are both
  the opposite color.
* **outlier islands** — a short interior run (length 2 up to half the row,
  rounded up) flanked on both sides by the opposite color.
* **checkered** — frequent alternation; scored as the mean per-row
  horizontal transition rate, 0.0 for uniform rows, 1.0 for a perfect
  checkerboard.

Cells at the row boundary have only one neighbor, so they can anchor
neither an outlier nor an island; anomalous boundary runs (and interior
runs too long to be islands) are reported as uncategorized.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import groupby
from typing import Mapping, Sequence, Union

GREEN = "green"  # displayed "Object Exists"
RED = "red"      # displayed "Object Does Not Exist"

Rows = Union[Mapping[str, Sequence[bool]], Sequence[Sequence[bool]]]


@dataclass(frozen=True)
class PatternReport:
    uni_color_rows: tuple[tuple[str, str], ...] = ()
    single_outliers: tuple[tuple[str, int], ...] = ()
    outlier_islands: tuple[tuple[str, int, int, str], ...] = ()
    uncategorized_runs: tuple[tuple[str, int, int, str], ...] = ()
    checkered_score: float = 0.0

    def as_dict(self) -> dict:
        return {
            "uni_color_rows": [
                {"object": o, "color": c} for o, c in self.uni_color_rows
            ],
            "single_outliers": [
                {"object": o, "frame": f} for o, f in self.single_outliers
            ],
            "outlier_islands": [
                {"object": o, "start_frame": s, "length": n, "color": c}
                for o, s, n, c in self.outlier_islands
            ],
            "uncategorized_runs": [
                {"object": o, "start_frame": s, "length": n, "color": c}
                for o, s, n, c in self.uncategorized_runs
            ],
            "checkered_score": self.checkered_score,
        }


def _color(value: bool) -> str:
    return GREEN if value else RED


def _as_named_rows(grid: Rows) -> list[tuple[str, Sequence[bool]]]:
    if isinstance(grid, Mapping):
        return list(grid.items())
    return [(f"row{i}", row) for i, row in enumerate(grid)]


def _runs(row: Sequence[bool]) -> list[tuple[int, int, bool]]:
    """Maximal runs as (start, length, value)."""
    out = []
    start = 0
    for value, group in groupby(row):
        length = len(list(group))
        out.append((start, length, value))
        start += length
    return out


def row_transition_rate(row: Sequence[bool]) -> float:
    n = len(row)
    if n <= 1:
        return 0.0
    changes = sum(1 for a, b in zip(row, row[1:]) if a != b)
    return changes / (n - 1)


def checkeredness(grid: Rows) -> float:
    """Mean per-row horizontal transition rate in [0, 1]."""
    rows = _as_named_rows(grid)
    if not rows:
        raise ValueError("empty grid")
    rates = []
    for _, row in rows:
        if len(row) == 0:
            raise ValueError("empty row in grid")
        rates.append(row_transition_rate(row))
    return sum(rates) / len(rates)


def detect_patterns(grid: Rows) -> PatternReport:
    rows = _as_named_rows(grid)
    if not rows:
        raise ValueError("empty grid")

    uni_color: list[tuple[str, str]] = []
    outliers: list[tuple[str, int]] = []
    islands: list[tuple[str, int, int, str]] = []
    uncategorized: list[tuple[str, int, int, str]] = []

    for name, row in rows:
        n = len(row)
        if n == 0:
            raise ValueError(f"empty row {name!r}")
        runs = _runs(row)
        if len(runs) == 1:
            uni_color.append((name, _color(row[0])))
            continue
        island_cap = (n + 1) // 2  # ceil(n / 2)
        for start, length, value in runs:
            interior = start > 0 and start + length < n
            if interior and length == 1:
                outliers.append((name, start))
            elif interior and 2 <= length <= island_cap:
                islands.append((name, start, length, _color(value)))
            else:
                uncategorized.append((name, start, length, _color(value)))

    return PatternReport(
        uni_color_rows=tuple(uni_color),
        single_outliers=tuple(outliers),
        outlier_islands=tuple(islands),
        uncategorized_runs=tuple(uncategorized),
        checkered_score=checkeredness(grid),
    )
