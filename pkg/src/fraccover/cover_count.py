"""Occupancy grids, box counts N(delta) and cover areas S(delta)."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError
from .fractal_gen import PointSet

MAX_SIDE = 2**14


@dataclass(frozen=True, eq=False)
class OccupancyGrid:
    """Square bit grid over the unit square.

    ``cells[i, j]`` is True when some point has ``floor(x * side) == i`` and
    ``floor(y * side) == j``. The grid is read-only after construction, so a
    single instance can be counted from several threads at once.
    """

    cells: np.ndarray
    extent: float = 1.0
    occupied_count: int = field(init=False)
    _ii: np.ndarray = field(init=False, repr=False)
    _jj: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        cells = np.array(self.cells, dtype=bool)
        if cells.ndim != 2 or cells.shape[0] != cells.shape[1] or cells.shape[0] < 1:
            raise DomainError(f"cells must be a non-empty square array, got {cells.shape}")
        if self.extent != 1.0:
            raise DomainError("extent is fixed at 1.0 (unit-square convention)")
        cells.setflags(write=False)
        ii, jj = np.nonzero(cells)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "_ii", ii)
        object.__setattr__(self, "_jj", jj)
        object.__setattr__(self, "occupied_count", int(ii.size))

    @property
    def side(self) -> int:
        return self.cells.shape[0]


class ScaleEntry(NamedTuple):
    delta: float
    count: float
    area: float


@dataclass(frozen=True, eq=False)
class ScaleSeries:
    """Paired (delta, N(delta), S(delta)) samples, delta strictly decreasing.

    ``resolution`` is the cell size of the grid the series came from
    (``extent / side``); it is ``None`` for synthetic or imported series.
    Counts may be non-integer for synthetic power laws.
    """

    entries: tuple[ScaleEntry, ...]
    ambient_dimension: int = 2
    resolution: Optional[float] = None

    def __post_init__(self) -> None:
        entries = tuple(ScaleEntry(*map(float, e)) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if self.ambient_dimension < 1:
            raise DomainError("ambient_dimension must be a positive integer")
        for e in entries:
            if not (e.delta > 0 and e.count > 0 and e.area > 0):
                raise DomainError(f"delta, count and area must be positive: {e}")
        for a, b in zip(entries, entries[1:]):
            if not b.delta < a.delta:
                raise DomainError("deltas must be strictly decreasing")

    @classmethod
    def from_counts(
        cls,
        deltas: Sequence[float],
        counts: Sequence[float],
        ambient_dimension: int = 2,
        resolution: Optional[float] = None,
    ) -> "ScaleSeries":
        """Build a series, filling each area as ``count * delta**D_E``."""
        if len(deltas) != len(counts):
            raise DomainError("deltas and counts differ in length")
        entries = tuple(
            ScaleEntry(float(d), float(c), cover_area(float(c), float(d), ambient_dimension))
            for d, c in zip(deltas, counts)
        )
        return cls(entries, ambient_dimension, resolution)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def deltas(self) -> np.ndarray:
        return np.array([e.delta for e in self.entries])

    @property
    def counts(self) -> np.ndarray:
        return np.array([e.count for e in self.entries])

    @property
    def areas(self) -> np.ndarray:
        return np.array([e.area for e in self.entries])

    def subset(self, keep: Sequence[bool]) -> "ScaleSeries":
        entries = tuple(e for e, k in zip(self.entries, keep) if k)
        return ScaleSeries(entries, self.ambient_dimension, self.resolution)


def cover_area(count: float, delta: float, ambient_dimension: int = 2) -> float:
    """S(delta) = N(delta) * delta**D_E with proportionality constant 1."""
    return count * delta**ambient_dimension


def rasterize(points: PointSet, side: int) -> OccupancyGrid:
    """Mark every cell of a ``side x side`` grid that holds at least one point.

    Coordinates equal to 1.0 are clamped into the last row/column.
    """
    if side < 1:
        raise DomainError(f"side must be positive, got {side}")
    if side > MAX_SIDE:
        raise ResourceLimitError(f"side {side} exceeds guard {MAX_SIDE}")
    pts = points.points
    if pts.shape[0] == 0:
        raise DomainError("cannot rasterize an empty point set")
    idx = np.floor(pts * side).astype(np.int64)
    np.clip(idx, 0, side - 1, out=idx)
    cells = np.zeros((side, side), dtype=bool)
    cells[idx[:, 0], idx[:, 1]] = True
    return OccupancyGrid(cells)


def count_boxes(grid: OccupancyGrid, box_cells: int) -> int:
    """Number of origin-anchored ``box_cells``-wide blocks holding an occupied cell.

    Blocks along the far edge may be partial and still count.
    """
    side = grid.side
    if not 1 <= box_cells <= side:
        raise DomainError(f"box_cells must lie in [1, {side}], got {box_cells}")
    if grid.occupied_count == 0:
        return 0
    if box_cells == 1:
        return grid.occupied_count
    per_axis = -(-side // box_cells)
    keys = (grid._ii // box_cells) * per_axis + grid._jj // box_cells
    return int(np.unique(keys).size)


def build_scale_series(
    grid: OccupancyGrid,
    base: int = 2,
    depth: int = 1,
    ambient_dimension: int = 2,
    workers: Optional[int] = None,
) -> ScaleSeries:
    """Count boxes of ``base**k`` cells for k = depth, ..., 0.

    ``delta_k = base**k / side * extent``. Counts at different scales are
    independent and may run on ``workers`` threads; the result order is
    fixed by delta regardless.
    """
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if depth < 1:
        raise DomainError(f"depth must be positive, got {depth}")
    if base**depth > grid.side:
        raise DomainError(f"base**depth = {base**depth} exceeds side {grid.side}")
    if grid.occupied_count == 0:
        raise DomainError("grid has no occupied cells")
    sizes = [base**k for k in range(depth, -1, -1)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda b: count_boxes(grid, b), sizes))
    else:
        counts = [count_boxes(grid, b) for b in sizes]
    deltas = [b / grid.side * grid.extent for b in sizes]
    return ScaleSeries.from_counts(
        deltas, counts, ambient_dimension, resolution=grid.extent / grid.side
    )


def max_count(delta: float) -> int:
    """Upper bound ceil(1/delta)**2 on N(delta) inside the unit square."""
    return math.ceil(1.0 / delta - 1e-12) ** 2
