"""Power-law fit of N(delta) and the cover-area scaling check.

The dimension is the negated OLS slope of ln N against ln delta over a
finite, explicitly reported window of scales. The area check evaluates

    r(alpha, delta) = ln S(alpha delta) - (D_E - d_h) ln alpha - ln S(delta)

for every ordered pair of entries; r vanishes for an exact power law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .cover_count import ScaleSeries
from .errors import DegenerateInputError, DomainError, InsufficientDataError

RANGE_SLACK = 0.1


@dataclass(frozen=True)
class TrimPolicy:
    """Which scales count as the scaling regime.

    Entries with ``count < min_count`` are lattice-dominated and dropped.
    Entries with ``delta < min_box_cells * resolution`` are finer than the
    rasterization can resolve and dropped. ``resolution=None`` falls back
    to the series' own resolution; if that is unknown too, no floor applies.
    """

    min_count: float = 8
    min_box_cells: float = 4
    resolution: Optional[float] = None

    def floor(self, series: ScaleSeries) -> float:
        res = self.resolution if self.resolution is not None else series.resolution
        return 0.0 if res is None else self.min_box_cells * res


NO_TRIM = TrimPolicy(min_count=0, min_box_cells=0)


@dataclass(frozen=True)
class DimensionEstimate:
    d_h: float
    log_c: float
    r_squared: float
    stderr_slope: float
    delta_min: float
    delta_max: float
    n_points: int
    out_of_range: bool = False

    @property
    def scale_range(self) -> tuple[float, float]:
        return (self.delta_min, self.delta_max)

    def to_dict(self) -> dict:
        return {
            "d_h": self.d_h,
            "log_c": self.log_c,
            "r_squared": self.r_squared,
            "stderr_slope": self.stderr_slope,
            "delta_min": self.delta_min,
            "delta_max": self.delta_max,
            "n_points": self.n_points,
            "out_of_range": self.out_of_range,
        }


class ResidualPair(NamedTuple):
    alpha: float
    delta: float
    residual: float
    log_alpha: float


@dataclass(frozen=True)
class ScalingResidualReport:
    pairs: tuple[ResidualPair, ...]
    median_abs_residual: float
    max_abs_residual: float
    d_h_used: float
    ambient_dimension: int

    def restricted(self, max_abs_log_alpha: float, include_identity: bool = True) -> np.ndarray:
        """Absolute residuals of pairs with ``|ln alpha| <= max_abs_log_alpha``."""
        return np.array(
            [
                abs(p.residual)
                for p in self.pairs
                if abs(p.log_alpha) <= max_abs_log_alpha
                and (include_identity or p.log_alpha != 0.0)
            ]
        )

    def summary(self) -> dict:
        off = self.restricted(math.inf, include_identity=False)
        return {
            "n_pairs": len(self.pairs),
            "median_abs_residual": self.median_abs_residual,
            "max_abs_residual": self.max_abs_residual,
            "median_abs_residual_off_identity": float(np.median(off)) if off.size else 0.0,
            "d_h_used": self.d_h_used,
            "ambient_dimension": self.ambient_dimension,
        }


def trim_scale_regime(series: ScaleSeries, policy: TrimPolicy = TrimPolicy()) -> ScaleSeries:
    """Drop entries outside the scaling regime, keeping the original order."""
    if len(series) == 0:
        raise InsufficientDataError("cannot trim an empty series")
    floor = policy.floor(series)
    keep = [e.count >= policy.min_count and e.delta >= floor * (1 - 1e-12) for e in series.entries]
    if not any(keep):
        raise InsufficientDataError("every entry was trimmed")
    return series.subset(keep)


def fit_power_law(log_delta: np.ndarray, log_count: np.ndarray) -> tuple[float, float, float, float]:
    """OLS of ``log_count`` on ``log_delta``: (slope, intercept, r^2, stderr of slope)."""
    n = log_delta.size
    x_mean = log_delta.mean()
    y_mean = log_count.mean()
    dx = log_delta - x_mean
    dy = log_count - y_mean
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise DegenerateInputError("ln(delta) has zero variance")
    slope = float(dx @ dy) / sxx
    intercept = y_mean - slope * x_mean
    resid = dy - slope * dx
    ss_res = float(resid @ resid)
    ss_tot = float(dy @ dy)
    # a spread at rounding level (e.g. constant counts) is a perfect fit
    noise = n * (64 * np.finfo(float).eps * max(1.0, float(np.abs(log_count).max()))) ** 2
    if ss_tot <= noise:
        r_squared = 1.0
    else:
        r_squared = max(0.0, 1.0 - ss_res / ss_tot)
    stderr = math.sqrt(ss_res / (n - 2) / sxx) if n > 2 else 0.0
    return slope, float(intercept), r_squared, stderr


def estimate_dimension(
    series: ScaleSeries, trim: Optional[TrimPolicy] = None
) -> DimensionEstimate:
    """Fit N(delta) = C * delta**(-d_h) over the (optionally trimmed) series.

    A fitted ``d_h`` outside ``[-0.1, D_E + 0.1]`` is returned with
    ``out_of_range=True`` rather than clamped.
    """
    used = trim_scale_regime(series, trim) if trim is not None else series
    if len(used) < 3:
        raise InsufficientDataError(f"need >= 3 entries to fit, have {len(used)}")
    log_delta = np.log(used.deltas)
    slope, intercept, r2, se = fit_power_law(log_delta, np.log(used.counts))
    d_h = -slope
    de = series.ambient_dimension
    return DimensionEstimate(
        d_h=d_h,
        log_c=intercept,
        r_squared=r2,
        stderr_slope=se,
        delta_min=float(used.deltas.min()),
        delta_max=float(used.deltas.max()),
        n_points=len(used),
        out_of_range=not (-RANGE_SLACK <= d_h <= de + RANGE_SLACK),
    )


def verify_area_scaling(series: ScaleSeries, d_h: float) -> ScalingResidualReport:
    """Residuals of the cover-area functional equation for every ordered pair.

    Pair (i, j) uses delta = delta_i and alpha = delta_j / delta_i; i == j
    gives alpha = 1 and a residual of exactly 0. ``ln alpha`` is taken as
    ``ln delta_j - ln delta_i`` so that swapping i and j negates the
    residual exactly.
    """
    if len(series) < 2:
        raise InsufficientDataError("need >= 2 entries to compare scales")
    if not math.isfinite(d_h):
        raise DomainError(f"d_h must be finite, got {d_h}")
    de = series.ambient_dimension
    exponent = de - d_h
    log_delta = np.log(series.deltas)
    log_area = np.log(series.areas)
    deltas = series.deltas
    pairs = []
    for i in range(len(series)):
        for j in range(len(series)):
            log_alpha = float(log_delta[j] - log_delta[i])
            residual = float(log_area[j] - log_area[i]) - exponent * log_alpha
            pairs.append(ResidualPair(float(deltas[j] / deltas[i]), float(deltas[i]), residual, log_alpha))
    abs_res = np.abs([p.residual for p in pairs])
    return ScalingResidualReport(
        pairs=tuple(pairs),
        median_abs_residual=float(np.median(abs_res)),
        max_abs_residual=float(abs_res.max()),
        d_h_used=float(d_h),
        ambient_dimension=de,
    )
