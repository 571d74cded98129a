"""Deterministic planar test sets with known box dimension.

Every generator returns a :class:`PointSet` whose coordinates lie in the
unit square. Raw sets are mapped into ``[margin, 1 - margin]`` by a fixed
uniform scaling (default margin 1%), so no point sits on the outer edge of
a counting grid. Sierpinski and Cantor representatives are cell-interior
already and default to no inset, which keeps their cells aligned with
dyadic/triadic lattices. The Koch, Sierpinski and Cantor fixtures use no
randomness; the fBm graph is driven by a seeded PCG64 stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .errors import DomainError, ResourceLimitError

DEFAULT_MARGIN = 0.01
IFS_MARGIN = 0.0

KOCH_MAX_LEVEL = 10
SIERPINSKI_MAX_LEVEL = 12
CANTOR_MAX_LEVEL = 8
FBM_MIN_LOG2 = 8
FBM_MAX_LOG2 = 20

KOCH_DIMENSION = math.log(4) / math.log(3)
SIERPINSKI_DIMENSION = math.log(3) / math.log(2)
CANTOR_DUST_DIMENSION = math.log(4) / math.log(3)
KOCH_HEIGHT = math.sqrt(3.0) / 6.0

# right isosceles base triangle: its IFS cells align with dyadic grids
SIERPINSKI_VERTICES = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


@dataclass(frozen=True, eq=False)
class PointSet:
    """Normalized planar points produced by one generator call.

    Attributes
    ----------
    points : ndarray, shape (n, 2)
        Read-only coordinates in ``[0, 1]^2``.
    generator_name : str
        ``"koch"``, ``"sierpinski"``, ``"cantor"``, ``"fbm"``, ``"square"``
        or ``"segment"``.
    level : int or None
        Recursion depth; ``None`` for non-recursive fixtures.
    expected_dimension : float or None
        Analytic box dimension when known.
    params : dict
        Generator arguments, echoed into reports.
    """

    points: np.ndarray
    generator_name: str
    level: Optional[int] = None
    expected_dimension: Optional[float] = None
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise DomainError(f"points must have shape (n, 2), got {pts.shape}")
        if pts.shape[0] == 0:
            raise DomainError("a PointSet needs at least one point")
        if not np.all(np.isfinite(pts)):
            raise DomainError("points must be finite")
        if pts.min() < 0.0 or pts.max() > 1.0:
            raise DomainError("coordinates must lie in [0, 1]")
        if self.level is not None and self.level < 0:
            raise DomainError("level must be non-negative")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]


def _inset(raw: np.ndarray, margin: float) -> np.ndarray:
    if not 0.0 <= margin < 0.5:
        raise DomainError(f"margin must lie in [0, 0.5), got {margin}")
    return margin + (1.0 - 2.0 * margin) * raw


def _check_level(level: int, guard: int, name: str) -> None:
    if level < 0:
        raise DomainError(f"{name} level must be non-negative, got {level}")
    if level > guard:
        raise ResourceLimitError(f"{name} level {level} exceeds guard {guard}")


def _koch_raw(level: int) -> np.ndarray:
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    c, s = math.cos(math.pi / 3), math.sin(math.pi / 3)
    for _ in range(level):
        p, q = pts[:-1], pts[1:]
        d = (q - p) / 3.0
        a = p + d
        b = a + np.column_stack((c * d[:, 0] - s * d[:, 1], s * d[:, 0] + c * d[:, 1]))
        e = p + 2.0 * d
        out = np.empty((4 * len(p) + 1, 2))
        out[0:-1:4] = p
        out[1::4] = a
        out[2::4] = b
        out[3::4] = e
        out[-1] = pts[-1]
        pts = out
    return pts


def generate_koch(level: int, margin: float = DEFAULT_MARGIN) -> PointSet:
    """Vertices of the Koch polyline after ``level`` subdivisions.

    The curve runs from (0, c) to (1, c) before the inset, with c chosen so
    its bounding box is vertically centred; the output has ``4**level + 1``
    points in traversal order.
    """
    _check_level(level, KOCH_MAX_LEVEL, "koch")
    raw = _koch_raw(level)
    raw[:, 1] += 0.5 - KOCH_HEIGHT / 2.0
    return PointSet(
        _inset(raw, margin),
        "koch",
        level=level,
        expected_dimension=KOCH_DIMENSION,
        params={"level": level, "margin": margin},
    )


def generate_sierpinski(level: int, margin: float = IFS_MARGIN) -> PointSet:
    """Centroids of the ``3**level`` level-``level`` Sierpinski cells.

    The three maps halve toward the corners of the triangle
    (0,0), (1,0), (0,1). Points are ordered by IFS address with the
    outermost map as the most significant digit (depth-first order).
    """
    _check_level(level, SIERPINSKI_MAX_LEVEL, "sierpinski")
    pts = SIERPINSKI_VERTICES.mean(axis=0, keepdims=True)
    for _ in range(level):
        pts = np.concatenate([(pts + v) / 2.0 for v in SIERPINSKI_VERTICES])
    return PointSet(
        _inset(pts, margin),
        "sierpinski",
        level=level,
        expected_dimension=SIERPINSKI_DIMENSION,
        params={"level": level, "margin": margin},
    )


def _cantor_centers(level: int) -> np.ndarray:
    left = np.zeros(1)
    width = 1.0
    for _ in range(level):
        width /= 3.0
        left = np.concatenate([left, left + 2.0 * width])
        left.sort()
    return left + width / 2.0


def generate_cantor_dust(level: int, margin: float = IFS_MARGIN) -> PointSet:
    """Cell centres of the product Cantor set, ``4**level`` points."""
    _check_level(level, CANTOR_MAX_LEVEL, "cantor")
    c = _cantor_centers(level)
    xx, yy = np.meshgrid(c, c, indexing="ij")
    pts = np.column_stack((xx.ravel(), yy.ravel()))
    return PointSet(
        _inset(pts, margin),
        "cantor",
        level=level,
        expected_dimension=CANTOR_DUST_DIMENSION,
        params={"level": level, "margin": margin},
    )


def midpoint_displacement(hurst: float, n_levels: int, rng: np.random.Generator) -> np.ndarray:
    """fBm path on ``2**n_levels + 1`` equispaced times in [0, 1].

    B(0) = 0, B(1) ~ N(0, 1); each refinement adds the conditional-variance
    displacement ``(1 - 2**(2H-2)) * 2**(-2 j H)`` to the interval midpoints.
    Only the local increments are exact; long-range correlation is not.
    """
    path = np.array([0.0, rng.standard_normal()])
    scale = math.sqrt(1.0 - 2.0 ** (2.0 * hurst - 2.0))
    for j in range(1, n_levels + 1):
        mid = 0.5 * (path[:-1] + path[1:])
        mid += scale * 2.0 ** (-j * hurst) * rng.standard_normal(mid.size)
        out = np.empty(2 * path.size - 1)
        out[0::2] = path
        out[1::2] = mid
        path = out
    return path


def generate_fbm_graph(
    hurst: float, n: int, seed: int, margin: float = DEFAULT_MARGIN
) -> PointSet:
    """Graph ``{(t_i, B_H(t_i))}`` of a midpoint-displacement fBm path.

    ``n`` samples are taken at ``t_i = i / n``; the displaced path has
    ``n + 1`` nodes and the terminal node is dropped. Time is mapped
    uniformly into the inset square and the path values are min-max
    normalized into the same band.
    """
    if not 0.0 < hurst < 1.0:
        raise DomainError(f"hurst must lie in (0, 1), got {hurst}")
    n_levels = int(n).bit_length() - 1
    if n < 1 or 2**n_levels != n or not FBM_MIN_LOG2 <= n_levels <= FBM_MAX_LOG2:
        raise DomainError(
            f"n must be 2**k with {FBM_MIN_LOG2} <= k <= {FBM_MAX_LOG2}, got {n}"
        )
    rng = np.random.default_rng(seed)
    values = midpoint_displacement(hurst, n_levels, rng)[:-1]
    t = np.arange(n) / n
    lo, hi = values.min(), values.max()
    y = (values - lo) / (hi - lo) if hi > lo else np.full(n, 0.5)
    return PointSet(
        _inset(np.column_stack((t, y)), margin),
        "fbm",
        level=None,
        expected_dimension=2.0 - hurst,
        params={"hurst": hurst, "n": n, "seed": seed, "margin": margin},
    )


def generate_filled_square(n_per_axis: int, margin: float = DEFAULT_MARGIN) -> PointSet:
    """Uniform lattice filling the inset square; box dimension 2."""
    if n_per_axis < 1:
        raise DomainError("n_per_axis must be positive")
    if n_per_axis > 2**14:
        raise ResourceLimitError(f"n_per_axis {n_per_axis} exceeds guard {2**14}")
    c = (np.arange(n_per_axis) + 0.5) / n_per_axis
    xx, yy = np.meshgrid(c, c, indexing="ij")
    return PointSet(
        _inset(np.column_stack((xx.ravel(), yy.ravel())), margin),
        "square",
        expected_dimension=2.0,
        params={"n_per_axis": n_per_axis, "margin": margin},
    )


def generate_segment(n: int, margin: float = DEFAULT_MARGIN) -> PointSet:
    """Equispaced points on the horizontal midline; box dimension 1."""
    if n < 2:
        raise DomainError("a segment needs at least 2 points")
    if n > 2**20:
        raise ResourceLimitError(f"segment point count {n} exceeds guard {2**20}")
    t = np.linspace(0.0, 1.0, n)
    return PointSet(
        _inset(np.column_stack((t, np.full(n, 0.5))), margin),
        "segment",
        expected_dimension=1.0,
        params={"n": n, "margin": margin},
    )
