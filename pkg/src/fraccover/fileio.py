"""CSV / JSON readers and writers for points, scale series and residuals.

Floats are written with 17 significant digits, which round-trips IEEE
doubles exactly and keeps artifacts byte-stable across runs.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .cover_count import ScaleEntry, ScaleSeries
from .errors import DomainError
from .fractal_gen import PointSet
from .optimal_cover import CoverShape
from .scaling_law import ScalingResidualReport

POINTS_HEADER = ("x", "y")
SERIES_HEADER = ("delta", "count", "area")
RESIDUAL_HEADER = ("alpha", "delta", "residual")
SHAPE_HEADER = ("x", "f_x")


def fmt(value: float) -> str:
    return f"{float(value):.16e}"


def fmt_count(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else fmt(value)


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _write_records(path: Path, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    records = [dict(zip(header, map(float, r))) for r in rows]
    write_json(path, records)


def _read_rows(path: Path, header: Sequence[str]) -> list[list[float]]:
    path = Path(path)
    if path.suffix == ".json":
        records = json.loads(path.read_text())
        return [[float(r[k]) for k in header] for r in records]
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        got = next(reader, None)
        if got is None or tuple(c.strip() for c in got) != tuple(header):
            raise DomainError(f"{path}: expected header {','.join(header)}, got {got}")
        return [[float(c) for c in row] for row in reader if row]


def write_json(path: Path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def write_points(path: Path, points: PointSet, fmt_name: str = "csv") -> None:
    if fmt_name == "json":
        _write_records(path, POINTS_HEADER, points.points)
    else:
        _write_rows(path, POINTS_HEADER, ((fmt(x), fmt(y)) for x, y in points.points))


def read_points(path: Path) -> PointSet:
    rows = _read_rows(path, POINTS_HEADER)
    if not rows:
        raise DomainError(f"{path}: no points")
    return PointSet(np.array(rows), generator_name=Path(path).stem)


def write_series(path: Path, series: ScaleSeries, fmt_name: str = "csv") -> None:
    if fmt_name == "json":
        _write_records(path, SERIES_HEADER, series.entries)
    else:
        _write_rows(
            path, SERIES_HEADER,
            ((fmt(e.delta), fmt_count(e.count), fmt(e.area)) for e in series.entries),
        )


def read_series(path: Path, ambient_dimension: int = 2) -> ScaleSeries:
    rows = _read_rows(path, SERIES_HEADER)
    return ScaleSeries(tuple(ScaleEntry(*r) for r in rows), ambient_dimension)


def write_residuals(path: Path, report: ScalingResidualReport, fmt_name: str = "csv") -> None:
    rows = ((p.alpha, p.delta, p.residual) for p in report.pairs)
    if fmt_name == "json":
        _write_records(path, RESIDUAL_HEADER, rows)
    else:
        _write_rows(path, RESIDUAL_HEADER, (tuple(map(fmt, r)) for r in rows))


def write_shape(path: Path, shape: CoverShape, fmt_name: str = "csv") -> None:
    if fmt_name == "json":
        _write_records(path, SHAPE_HEADER, shape.profile)
    else:
        _write_rows(path, SHAPE_HEADER, ((fmt(x), fmt(y)) for x, y in shape.profile))
