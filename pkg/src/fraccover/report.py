"""End-to-end pipeline: fixture -> grid -> scale series -> fit -> area check -> shape.

``run_report`` writes ``series.csv``, ``residuals.csv``, ``shape.svg`` and
``report.json`` into one directory. Paths inside the JSON are relative to
that directory, so two runs with the same arguments produce byte-identical
CSV/JSON regardless of where they were written.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

from . import fileio
from .cover_count import build_scale_series, rasterize
from .errors import FracCoverError, ReportError
from .fractal_gen import (
    PointSet,
    generate_cantor_dust,
    generate_fbm_graph,
    generate_filled_square,
    generate_koch,
    generate_segment,
    generate_sierpinski,
)
from .scaling_law import (
    DimensionEstimate,
    TrimPolicy,
    estimate_dimension,
    trim_scale_regime,
    verify_area_scaling,
)
from .svg import shape_family_svg

FIXTURES = ("koch", "sierpinski", "cantor", "fbm", "square", "segment")

DIMENSION_TOLERANCE = {"square": 0.03, "segment": 0.03, "fbm": 0.12}
DEFAULT_DIMENSION_TOLERANCE = 0.08
RESIDUAL_THRESHOLD = 0.15
PICTURE_DH = (1.0, 1.25, 1.5, 1.75, 2.0)

SERIES_FILE = "series.csv"
RESIDUAL_FILE = "residuals.csv"
SHAPE_FILE = "shape.svg"
REPORT_FILE = "report.json"


@dataclass(frozen=True)
class FixtureSpec:
    name: str
    level: Optional[int] = None
    hurst: float = 0.5
    n: int = 2**14
    seed: int = 0

    def build(self, side: int) -> PointSet:
        if self.name == "koch":
            return generate_koch(self._level())
        if self.name == "sierpinski":
            return generate_sierpinski(self._level())
        if self.name == "cantor":
            return generate_cantor_dust(self._level())
        if self.name == "fbm":
            return generate_fbm_graph(self.hurst, self.n, self.seed)
        if self.name == "square":
            return generate_filled_square(side)
        if self.name == "segment":
            return generate_segment(2 * side)
        raise ReportError(f"unknown fixture {self.name!r}; choose from {FIXTURES}")

    def _level(self) -> int:
        if self.level is None:
            raise ReportError(f"fixture {self.name!r} needs a level")
        return self.level

    def describe(self) -> dict[str, Any]:
        if self.name == "fbm":
            return {"name": self.name, "hurst": self.hurst, "n": self.n, "seed": self.seed}
        if self.name in ("square", "segment"):
            return {"name": self.name}
        return {"name": self.name, "level": self.level}


@dataclass(frozen=True)
class GridSpec:
    side: int


@dataclass(frozen=True)
class ScaleSpec:
    base: int = 2
    depth: Optional[int] = None
    trim: TrimPolicy = field(default_factory=TrimPolicy)

    def resolved_depth(self, side: int) -> int:
        if self.depth is not None:
            return self.depth
        depth = 0
        while self.base ** (depth + 1) <= side:
            depth += 1
        return depth


@dataclass
class ReportBundle:
    fixture: dict[str, Any]
    estimate: DimensionEstimate
    residuals: dict[str, Any]
    expected_dimension: Optional[float]
    pass_flags: dict[str, bool]
    thresholds: dict[str, float]
    settings: dict[str, Any]
    artifacts: dict[str, str]

    @property
    def passed(self) -> bool:
        return all(self.pass_flags.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "fixture": self.fixture,
            "estimate": self.estimate.to_dict(),
            "residuals": self.residuals,
            "expected_dimension": self.expected_dimension,
            "pass_flags": self.pass_flags,
            "thresholds": self.thresholds,
            "settings": self.settings,
            "artifacts": self.artifacts,
        }


def compute_pass_flags(
    d_h: float,
    out_of_range: bool,
    median_abs_residual: float,
    expected_dimension: Optional[float],
    thresholds: dict[str, float],
) -> dict[str, bool]:
    """Derive pass flags from the numbers they summarize."""
    flags = {"d_h_in_range": not out_of_range}
    if expected_dimension is not None:
        flags["dimension_within_tolerance"] = (
            abs(d_h - expected_dimension) <= thresholds["dimension_tolerance"]
        )
    flags["area_scaling_residual"] = median_abs_residual < thresholds["residual_threshold"]
    return flags


def recompute_pass_flags(bundle: dict[str, Any]) -> dict[str, bool]:
    """Pass flags recomputed from a loaded ``report.json``."""
    return compute_pass_flags(
        bundle["estimate"]["d_h"],
        bundle["estimate"]["out_of_range"],
        bundle["residuals"]["median_abs_residual"],
        bundle["expected_dimension"],
        bundle["thresholds"],
    )


def run_report(
    fixture: FixtureSpec,
    grid: GridSpec,
    scale: ScaleSpec,
    output_dir: Path,
    workers: Optional[int] = None,
) -> ReportBundle:
    """Run the whole pipeline for one fixture and write its artifacts."""
    output_dir = Path(output_dir)
    try:
        points = fixture.build(grid.side)
        occ = rasterize(points, grid.side)
        series = build_scale_series(occ, scale.base, scale.resolved_depth(grid.side), workers=workers)
        estimate = estimate_dimension(series, scale.trim)
        trimmed = trim_scale_regime(series, scale.trim)
        expected = points.expected_dimension
        d_h_used = expected if expected is not None else estimate.d_h
        residuals = verify_area_scaling(trimmed, d_h_used)
    except FracCoverError as err:
        raise ReportError(f"fixture {fixture.describe()}: {err}") from err

    thresholds = {
        "dimension_tolerance": DIMENSION_TOLERANCE.get(fixture.name, DEFAULT_DIMENSION_TOLERANCE),
        "residual_threshold": RESIDUAL_THRESHOLD,
    }
    flags = compute_pass_flags(
        estimate.d_h, estimate.out_of_range, residuals.median_abs_residual, expected, thresholds
    )
    output_dir.mkdir(parents=True, exist_ok=True)
    fileio.write_series(output_dir / SERIES_FILE, series)
    fileio.write_residuals(output_dir / RESIDUAL_FILE, residuals)
    shown = min(max(estimate.d_h, 1.0), 2.0)
    (output_dir / SHAPE_FILE).write_text(shape_family_svg(PICTURE_DH + (shown,)))

    bundle = ReportBundle(
        fixture=fixture.describe(),
        estimate=estimate,
        residuals=residuals.summary(),
        expected_dimension=expected,
        pass_flags=flags,
        thresholds=thresholds,
        settings={
            "side": grid.side,
            "base": scale.base,
            "depth": scale.resolved_depth(grid.side),
            "trim": asdict(scale.trim),
            "n_points": len(points),
            "occupied_cells": occ.occupied_count,
        },
        artifacts={
            "series_csv": SERIES_FILE,
            "residual_csv": RESIDUAL_FILE,
            "shape_svg": SHAPE_FILE,
        },
    )
    fileio.write_json(output_dir / REPORT_FILE, _finite(bundle.to_dict()))
    return bundle


def _finite(obj):
    # JSON has no NaN/inf; emit null instead
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj
