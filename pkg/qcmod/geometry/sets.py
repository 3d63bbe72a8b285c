"""
Sets, Balls and Annuli

Finite point samples of continua, annuli A(x0, r1, r2), sphere sampling,
diameters/distances and the sphere-crossing test for polylines.
"""

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from scipy.spatial.distance import cdist, pdist

from ..exceptions import DimensionMismatchError, GeometryError
from .points import ExtendedPoint, PointLike, as_array, as_point, chordal_pairwise


CROSSING_RTOL = 1e-12


def sphere_directions(n: int, count: int, seed: int = 0) -> np.ndarray:
    """
    Quasi-uniform unit vectors in R^n.

    n=2 uses equal angles starting at angle 0, n=3 the Fibonacci spiral,
    higher dimensions seeded normalized Gaussians.

    Args:
        n: Dimension (>= 2)
        count: Number of directions (>= 1)
        seed: RNG seed, only used for n >= 4

    Returns:
        Array of shape (count, n) with unit rows
    """
    if n < 2:
        raise GeometryError(f"dimension must be at least 2, got {n}")
    if count < 1:
        raise GeometryError(f"count must be positive, got {count}")
    if n == 2:
        theta = 2.0 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if n == 3:
        k = np.arange(count)
        z = 1.0 - (2.0 * k + 1.0) / count
        radius = np.sqrt(1.0 - z * z)
        longitude = np.pi * (3.0 - math.sqrt(5.0)) * k
        dirs = np.column_stack([radius * np.cos(longitude), radius * np.sin(longitude), z])
    else:
        rng = np.random.default_rng(seed)
        dirs = rng.standard_normal((count, n))
    return dirs / np.linalg.norm(dirs, axis=1, keepdims=True)


def sphere_points(center: PointLike, r: float, count: int, seed: int = 0) -> np.ndarray:
    """Sample ``count`` points of the sphere S(center, r)."""
    c = as_array(center)
    if r <= 0:
        raise GeometryError(f"sphere radius must be positive, got {r}")
    return c + r * sphere_directions(c.size, count, seed=seed)


@dataclass(frozen=True)
class Annulus:
    """The ring A(center, r1, r2) = {x : r1 < |x - center| < r2}."""

    center: ExtendedPoint
    r1: float
    r2: float

    def __post_init__(self):
        center = as_point(self.center)
        object.__setattr__(self, "center", center)
        if center.is_infinite:
            raise GeometryError("annulus center must be a finite point")
        if not (0.0 < self.r1 < self.r2 < math.inf):
            raise GeometryError(
                f"annulus radii must satisfy 0 < r1 < r2 < inf, got r1={self.r1}, r2={self.r2}"
            )

    @classmethod
    def at(cls, center: PointLike, r1: float, r2: float) -> "Annulus":
        return cls(center=as_point(center), r1=float(r1), r2=float(r2))

    @property
    def n(self) -> int:
        return self.center.n

    @property
    def origin(self) -> np.ndarray:
        return self.center.array

    def contains(self, points: np.ndarray, closed: bool = False) -> np.ndarray:
        """Membership mask for an array of points."""
        d = np.linalg.norm(np.atleast_2d(points) - self.origin, axis=1)
        if closed:
            return (d >= self.r1) & (d <= self.r2)
        return (d > self.r1) & (d < self.r2)

    def boundary_points(self, count: int) -> tuple:
        """Samples of the inner and outer boundary spheres."""
        return (
            sphere_points(self.center, self.r1, count),
            sphere_points(self.center, self.r2, count),
        )

    def to_dict(self) -> dict:
        return {"center": self.center.to_list(), "r1": self.r1, "r2": self.r2}


@dataclass(frozen=True)
class PointSet:
    """A finite sample of a continuum; connectivity is assumed by construction."""

    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.size == 0 or pts.shape[0] == 0:
            raise GeometryError("point set must be nonempty")
        if pts.shape[1] < 2:
            raise GeometryError(f"dimension must be at least 2, got {pts.shape[1]}")
        if not np.all(np.isfinite(pts)):
            raise GeometryError("point set coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def __repr__(self):
        return f"<PointSet(n={self.n}, size={len(self)})>"


SetLike = Union[PointSet, np.ndarray, Sequence[Sequence[float]]]


def as_point_set(a: SetLike) -> PointSet:
    return a if isinstance(a, PointSet) else PointSet(np.asarray(a, dtype=float))


def _pair(a: SetLike, b: SetLike) -> tuple:
    pa, pb = as_point_set(a), as_point_set(b)
    if pa.n != pb.n:
        raise DimensionMismatchError(f"cannot compare sets of dimension {pa.n} and {pb.n}")
    return pa, pb


def diam(a: SetLike) -> float:
    """Euclidean diameter sup |x - y| over the samples."""
    pts = as_point_set(a).points
    if len(pts) == 1:
        return 0.0
    return float(pdist(pts).max())


def dist(a: SetLike, b: SetLike) -> float:
    """Euclidean distance inf |x - y| between two sample sets."""
    pa, pb = _pair(a, b)
    return float(cdist(pa.points, pb.points).min())


def diam_h(a: SetLike) -> float:
    """Chordal diameter of a sample set."""
    pts = as_point_set(a).points
    return float(chordal_pairwise(pts, pts).max())


def dist_h(a: SetLike, b: SetLike) -> float:
    """Chordal distance between two sample sets."""
    pa, pb = _pair(a, b)
    return float(chordal_pairwise(pa.points, pb.points).min())


def chordal_ball_contains(points: np.ndarray, center: PointLike, eps: float) -> np.ndarray:
    """
    Membership mask for B_*(center, eps).

    For a finite center this is the Euclidean ball; for ∞ it is the set
    {x : h(x, ∞) < eps}.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    c = as_point(center)
    if c.n != pts.shape[1]:
        raise DimensionMismatchError(
            f"cannot compare points of dimension {pts.shape[1]} with center of dimension {c.n}"
        )
    if c.is_infinite:
        return 1.0 / np.sqrt(1.0 + np.einsum("ij,ij->i", pts, pts)) < eps
    return np.linalg.norm(pts - c.array, axis=1) < eps


def crosses_sphere(curve, center: PointLike, r: float) -> bool:
    """
    Whether a polyline meets the sphere S(center, r).

    True iff some segment has endpoints on opposite sides of the sphere or
    some vertex lies on it within ``1e-12 * r``.

    Args:
        curve: A Polyline, or an array of vertices
        center: Sphere center (finite)
        r: Sphere radius

    Returns:
        True if the curve crosses or touches the sphere
    """
    vertices = np.asarray(getattr(curve, "vertices", curve), dtype=float)
    c = as_array(center)
    if vertices.shape[1] != c.size:
        raise DimensionMismatchError(
            f"curve of dimension {vertices.shape[1]} vs center of dimension {c.size}"
        )
    offset = np.linalg.norm(vertices - c, axis=1) - r
    if np.any(np.abs(offset) <= CROSSING_RTOL * r):
        return True
    return bool(np.any(offset[:-1] * offset[1:] < 0.0))


def geometric_radii(start: float, end: float, factor: float = 10.0) -> list:
    """
    Radii start, start/factor, ... down to end.

    Example:
        >>> geometric_radii(1e-2, 1e-4)
        [0.01, 0.001, 0.0001]
    """
    if not (start > end > 0.0):
        raise GeometryError(f"need start > end > 0, got {start}, {end}")
    if factor <= 1.0:
        raise GeometryError(f"factor must exceed 1, got {factor}")
    steps = int(round(math.log(start / end) / math.log(factor)))
    return [start / factor ** k for k in range(steps + 1)]
