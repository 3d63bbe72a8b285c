"""
Extended Points

Points of the extended space R^n ∪ {∞} and the chordal metric on it.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import DimensionMismatchError, GeometryError


@dataclass(frozen=True)
class ExtendedPoint:
    """
    A point of R^n, or the point at infinity.

    Infinity is a tagged value (``coords is None``), never a large float,
    so finite-only formulas can reject it explicitly.
    """

    n: int
    coords: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.n < 2:
            raise GeometryError(f"dimension must be at least 2, got {self.n}")
        if self.coords is not None:
            if len(self.coords) != self.n:
                raise DimensionMismatchError(
                    f"expected {self.n} coordinates, got {len(self.coords)}"
                )
            if not all(np.isfinite(c) for c in self.coords):
                raise GeometryError(f"coordinates must be finite, got {self.coords}")

    @classmethod
    def finite(cls, coords: Sequence[float]) -> "ExtendedPoint":
        values = tuple(float(c) for c in coords)
        return cls(n=len(values), coords=values)

    @classmethod
    def infinity(cls, n: int) -> "ExtendedPoint":
        return cls(n=n, coords=None)

    @property
    def is_infinite(self) -> bool:
        return self.coords is None

    @property
    def array(self) -> np.ndarray:
        """Coordinates as a float array; infinity has none."""
        if self.coords is None:
            raise GeometryError("the point at infinity has no Euclidean coordinates")
        return np.array(self.coords, dtype=float)

    def to_list(self) -> Optional[list]:
        return None if self.coords is None else list(self.coords)

    def __repr__(self):
        if self.coords is None:
            return f"<ExtendedPoint(n={self.n}, ∞)>"
        return f"<ExtendedPoint({', '.join(f'{c:g}' for c in self.coords)})>"


PointLike = Union[ExtendedPoint, Sequence[float], np.ndarray]


def as_point(x: PointLike) -> ExtendedPoint:
    """Coerce a coordinate sequence (or an ExtendedPoint) to an ExtendedPoint."""
    if isinstance(x, ExtendedPoint):
        return x
    return ExtendedPoint.finite(np.asarray(x, dtype=float).ravel())


def as_array(x: PointLike) -> np.ndarray:
    """Finite coordinates of ``x``; rejects infinity."""
    return as_point(x).array


def chordal_dist(x: PointLike, y: PointLike) -> float:
    """
    Chordal distance between two points of the extended space.

    h(x, ∞) = 1/sqrt(1+|x|^2) and
    h(x, y) = |x-y| / (sqrt(1+|x|^2) sqrt(1+|y|^2)) for finite x, y.

    Args:
        x: First point
        y: Second point

    Returns:
        Distance in [0, 1]

    Raises:
        DimensionMismatchError: If the points have different dimension

    Example:
        >>> chordal_dist([0.0, 0.0], ExtendedPoint.infinity(2))
        1.0
    """
    p, q = as_point(x), as_point(y)
    if p.n != q.n:
        raise DimensionMismatchError(f"cannot compare points of dimension {p.n} and {q.n}")
    if p.is_infinite and q.is_infinite:
        return 0.0
    if p.is_infinite or q.is_infinite:
        finite = q if p.is_infinite else p
        return float(1.0 / np.sqrt(1.0 + finite.array @ finite.array))
    a, b = p.array, q.array
    return float(
        np.linalg.norm(a - b) / (np.sqrt(1.0 + a @ a) * np.sqrt(1.0 + b @ b))
    )


def chordal_pairwise(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Chordal distances between rows of two finite point arrays, shape (len(a), len(b))."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatchError(
            f"cannot compare points of dimension {a.shape[1]} and {b.shape[1]}"
        )
    euclid = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)
    wa = np.sqrt(1.0 + np.einsum("ij,ij->i", a, a))
    wb = np.sqrt(1.0 + np.einsum("ij,ij->i", b, b))
    return euclid / (wa[:, None] * wb[None, :])


def invert(x: PointLike) -> ExtendedPoint:
    """Inversion x/|x|^2 exchanging 0 and ∞."""
    p = as_point(x)
    if p.is_infinite:
        return ExtendedPoint.finite(np.zeros(p.n))
    v = p.array
    norm2 = float(v @ v)
    if norm2 == 0.0:
        return ExtendedPoint.infinity(p.n)
    return ExtendedPoint.finite(v / norm2)
