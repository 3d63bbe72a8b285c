"""
Grids and Grid Densities

Axis-aligned grids discretizing Lebesgue measure, exact clipping of
polylines against grid cells, and nonnegative densities on cells.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..curves import CurveFamily, Polyline
from ..exceptions import GridError
from ..geometry import as_array
from ..settings import GRID_PADDING, solver_threads

logger = logging.getLogger(__name__)


MIN_RESOLUTION = 8
_BOUNDS_RTOL = 1e-12


@dataclass(frozen=True)
class Grid:
    """A box [lower, upper] in R^n split into ``resolution`` cells per axis."""

    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    resolution: int

    def __post_init__(self):
        lower = tuple(float(x) for x in self.lower)
        upper = tuple(float(x) for x in self.upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if len(lower) != len(upper) or len(lower) < 2:
            raise GridError("grid bounds must be two points of the same dimension >= 2")
        if any(hi <= lo for lo, hi in zip(lower, upper)):
            raise GridError(f"grid box is empty: lower={lower}, upper={upper}")
        if self.resolution < MIN_RESOLUTION:
            raise GridError(
                f"resolution must be at least {MIN_RESOLUTION} per axis, got {self.resolution}"
            )

    @classmethod
    def fit(cls, points: np.ndarray, resolution: int, padding: float = GRID_PADDING) -> "Grid":
        """
        Cube grid around ``points`` with ``padding`` of the extent on every side.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        extent = max(float((hi - lo).max()), np.finfo(float).eps)
        middle = 0.5 * (lo + hi)
        half = (0.5 + padding) * extent
        return cls(tuple(middle - half), tuple(middle + half), resolution)

    @property
    def n(self) -> int:
        return len(self.lower)

    @property
    def lower_array(self) -> np.ndarray:
        return np.array(self.lower)

    @property
    def upper_array(self) -> np.ndarray:
        return np.array(self.upper)

    @property
    def widths(self) -> np.ndarray:
        return (self.upper_array - self.lower_array) / self.resolution

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.widths))

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.resolution,) * self.n

    @property
    def size(self) -> int:
        return self.resolution ** self.n

    def dilated(self, scale: float) -> "Grid":
        return Grid(tuple(scale * self.lower_array), tuple(scale * self.upper_array), self.resolution)

    def contains(self, points: np.ndarray) -> bool:
        pts = np.atleast_2d(points)
        slack = _BOUNDS_RTOL * float(np.abs(np.r_[self.lower, self.upper]).max())
        return bool(
            np.all(pts >= self.lower_array - slack) and np.all(pts <= self.upper_array + slack)
        )

    def cell_centers(self) -> np.ndarray:
        """Centers of all cells, shape ``(*shape, n)``."""
        axes = [
            lo + (np.arange(self.resolution) + 0.5) * w
            for lo, w in zip(self.lower, self.widths)
        ]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    def clip_segment(self, p0: np.ndarray, p1: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Exact lengths of the segment [p0, p1] inside each cell it crosses.

        Returns:
            (flat cell indices, lengths); lengths sum to |p1 - p0|
        """
        lower, widths = self.lower_array, self.widths
        a = (p0 - lower) / widths
        b = (p1 - lower) / widths
        cuts = [np.array([0.0, 1.0])]
        for k in range(self.n):
            if a[k] == b[k]:
                continue
            lo, hi = min(a[k], b[k]), max(a[k], b[k])
            planes = np.arange(np.floor(lo) + 1.0, np.ceil(hi))
            if planes.size:
                cuts.append((planes - a[k]) / (b[k] - a[k]))
        t = np.unique(np.concatenate(cuts))
        dt = np.diff(t)
        keep = dt > 0.0
        mids = 0.5 * (t[:-1] + t[1:])[keep]
        cells = np.floor(a + mids[:, None] * (b - a)).astype(np.int64)
        np.clip(cells, 0, self.resolution - 1, out=cells)
        flat = np.ravel_multi_index(tuple(cells.T), self.shape)
        return flat, dt[keep] * float(np.linalg.norm(p1 - p0))

    def curve_row(self, curve: Polyline) -> Tuple[np.ndarray, np.ndarray]:
        """Cell indices and in-cell lengths for a whole polyline."""
        pieces = [
            self.clip_segment(p0, p1) for p0, p1 in zip(curve.vertices[:-1], curve.vertices[1:])
        ]
        return (
            np.concatenate([p[0] for p in pieces]),
            np.concatenate([p[1] for p in pieces]),
        )

    def curve_matrix(self, family: CurveFamily, threads: Optional[int] = None) -> sparse.csr_matrix:
        """
        Sparse matrix of in-cell curve lengths, one row per curve.

        Rows are assembled in parallel over curves.

        Raises:
            GridError: If a curve leaves the grid
        """
        for i, curve in enumerate(family):
            if curve.n != self.n:
                raise GridError(f"curve {i} has dimension {curve.n}, grid has {self.n}")
            if not self.contains(curve.vertices):
                raise GridError(f"curve {i} leaves the grid box {self.lower}..{self.upper}")
        if len(family) == 0:
            return sparse.csr_matrix((0, self.size))

        workers = threads if threads is not None else solver_threads()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(self.curve_row, family))
        row_index = np.concatenate([np.full(len(r[0]), i) for i, r in enumerate(rows)])
        cols = np.concatenate([r[0] for r in rows])
        data = np.concatenate([r[1] for r in rows])
        matrix = sparse.coo_matrix((data, (row_index, cols)), shape=(len(family), self.size))
        return matrix.tocsr()

    def to_dict(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper), "resolution": self.resolution}


@dataclass(frozen=True, eq=False)
class GridDensity:
    """A nonnegative finite value per grid cell."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float).reshape(self.grid.shape)
        if not np.all(np.isfinite(v)):
            raise GridError("density values must be finite")
        if np.any(v < 0.0):
            raise GridError("density values must be nonnegative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "GridDensity":
        return cls(grid, np.full(grid.shape, float(value)))

    @classmethod
    def from_radial(
        cls,
        grid: Grid,
        fn: Callable[[np.ndarray], np.ndarray],
        center: Sequence[float],
        support: Optional[Tuple[float, float]] = None,
    ) -> "GridDensity":
        """
        Sample a radial function of |x - center| at cell centers.

        ``fn`` is called only on radii inside the closed ``support``; other
        cells get 0.
        """
        r = np.linalg.norm(grid.cell_centers() - as_array(center), axis=-1)
        values = np.zeros(grid.shape)
        mask = np.ones(grid.shape, dtype=bool)
        if support is not None:
            mask = (r >= support[0]) & (r <= support[1])
        if np.any(mask):
            values[mask] = np.asarray(fn(r[mask]), dtype=float)
        return cls(grid, values)

    @property
    def flat(self) -> np.ndarray:
        return self.values.ravel()

    def line_integrals(self, family: CurveFamily) -> np.ndarray:
        """Integral of the density along every curve of ``family``."""
        return self.grid.curve_matrix(family) @ self.flat

    def scaled(self, factor: float) -> "GridDensity":
        return GridDensity(self.grid, self.values * factor)

    def normalized_for(self, family: CurveFamily) -> "GridDensity":
        """Rescale so the smallest line integral over ``family`` is exactly 1."""
        smallest = float(self.line_integrals(family).min())
        if smallest <= 0.0:
            raise GridError("density vanishes along some curve and cannot be normalized")
        return self.scaled(1.0 / smallest)

    def energy(self, n: int) -> float:
        """Sum of rho^n times the cell volume."""
        return float(np.sum(self.values ** n) * self.grid.cell_volume)

    def weighted_energy(self, weight: "GridDensity", n: int) -> float:
        """Sum of Q * rho^n times the cell volume, with Q given on the same grid."""
        if weight.grid != self.grid:
            raise GridError("weight and density live on different grids")
        return float(np.sum(weight.values * self.values ** n) * self.grid.cell_volume)
