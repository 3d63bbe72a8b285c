"""
Polylines and Curve Families

Sampled curves gamma and finite families Gamma of them.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from ..exceptions import DimensionMismatchError, GeometryError
from ..schemas.family import CurveFamilySchema


@dataclass(frozen=True)
class Polyline:
    """
    An ordered list of at least two finite vertices.

    Consecutive vertices are distinct, so every segment and the total
    length are positive.
    """

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] < 2:
            raise GeometryError("a polyline needs at least two vertices")
        if v.shape[1] < 2:
            raise GeometryError(f"dimension must be at least 2, got {v.shape[1]}")
        if not np.all(np.isfinite(v)):
            raise GeometryError("polyline vertices must be finite")
        if np.any(np.linalg.norm(np.diff(v, axis=0), axis=1) == 0.0):
            raise GeometryError("consecutive polyline vertices must be distinct")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def through(cls, vertices: Sequence[Sequence[float]]) -> "Polyline":
        """Build a polyline, dropping consecutive repeated vertices."""
        v = np.asarray(vertices, dtype=float)
        keep = np.ones(len(v), dtype=bool)
        keep[1:] = np.linalg.norm(np.diff(v, axis=0), axis=1) > 0.0
        return cls(v[keep])

    @property
    def n(self) -> int:
        return self.vertices.shape[1]

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @property
    def segment_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.diff(self.vertices, axis=0), axis=1)

    def length(self) -> float:
        return float(self.segment_lengths.sum())

    def refine(self, k: int) -> "Polyline":
        """Insert ``k`` equally spaced vertices inside every segment."""
        if k < 0:
            raise GeometryError(f"refinement must be nonnegative, got {k}")
        if k == 0:
            return self
        t = np.arange(k + 1) / (k + 1)
        starts, ends = self.vertices[:-1], self.vertices[1:]
        inner = starts[:, None, :] + t[None, :, None] * (ends - starts)[:, None, :]
        return Polyline(np.vstack([inner.reshape(-1, self.n), self.vertices[-1:]]))

    def reversed(self) -> "Polyline":
        return Polyline(self.vertices[::-1])

    def subcurve(self, start: int, stop: int) -> "Polyline":
        """The vertex subrange ``vertices[start:stop]``."""
        return Polyline(self.vertices[start:stop])

    def dilated(self, scale: float, center: Sequence[float] = None) -> "Polyline":
        c = np.zeros(self.n) if center is None else np.asarray(center, dtype=float)
        return Polyline(c + scale * (self.vertices - c))

    def to_list(self) -> List[List[float]]:
        return self.vertices.tolist()

    def __repr__(self):
        return f"<Polyline(n={self.n}, vertices={len(self)}, length={self.length():.6g})>"


def length(c: Polyline) -> float:
    """
    Euclidean length of a polyline.

    Example:
        >>> length(Polyline([[0.0, 0.0], [1.0, 0.0]]))
        1.0
    """
    return c.length()


@dataclass(frozen=True)
class CurveFamily:
    """A finite family of polylines with a provenance label."""

    curves: Tuple[Polyline, ...]
    label: str = ""

    def __post_init__(self):
        curves = tuple(self.curves)
        object.__setattr__(self, "curves", curves)
        dims = {c.n for c in curves}
        if len(dims) > 1:
            raise DimensionMismatchError(f"family mixes dimensions {sorted(dims)}")

    @classmethod
    def empty(cls, label: str = "empty") -> "CurveFamily":
        return cls(curves=(), label=label)

    @property
    def n(self) -> int:
        if not self.curves:
            raise GeometryError("the empty family has no dimension")
        return self.curves[0].n

    def __len__(self) -> int:
        return len(self.curves)

    def __iter__(self) -> Iterator[Polyline]:
        return iter(self.curves)

    def __getitem__(self, i: int) -> Polyline:
        return self.curves[i]

    @property
    def all_vertices(self) -> np.ndarray:
        return np.vstack([c.vertices for c in self.curves])

    def refined(self, k: int) -> "CurveFamily":
        return CurveFamily(tuple(c.refine(k) for c in self.curves), self.label)

    def duplicated(self) -> "CurveFamily":
        """Every curve twice; the modulus is unchanged."""
        return CurveFamily(self.curves + self.curves, f"{self.label}+dup")

    def subfamily(self, indices: Iterable[int]) -> "CurveFamily":
        return CurveFamily(tuple(self.curves[i] for i in indices), f"{self.label}[sub]")

    def dilated(self, scale: float) -> "CurveFamily":
        return CurveFamily(tuple(c.dilated(scale) for c in self.curves), f"{scale:g}*{self.label}")

    def to_dict(self) -> dict:
        """The documented JSON shape ``{label, n, curves}``."""
        return {
            "label": self.label,
            "n": self.n if self.curves else 0,
            "curves": [c.to_list() for c in self.curves],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CurveFamily":
        """
        Inverse of ``to_dict``.

        Raises:
            pydantic.ValidationError: If vertices do not match the declared n
        """
        schema = CurveFamilySchema.model_validate(data)
        curves = tuple(Polyline(np.asarray(c, dtype=float)) for c in schema.curves)
        return cls(curves=curves, label=schema.label)

    def __repr__(self):
        return f"<CurveFamily(label={self.label!r}, curves={len(self)})>"
