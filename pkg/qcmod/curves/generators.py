"""
Curve Family Generators

Radial families joining the boundary spheres of an annulus, families
joining two sampled continua while avoiding forbidden balls, and image
families under a mapping.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from ..exceptions import DomainError, GeometryError
from ..geometry import Annulus, PointSet, dist, sphere_directions
from ..geometry.sets import SetLike, as_point_set
from .polyline import CurveFamily, Polyline

logger = logging.getLogger(__name__)


ExclusionBall = Tuple[Sequence[float], float]

PROJECTION_FACTOR = 1.05
DEFAULT_JITTER_FRACTION = 0.1
_AVOIDANCE_PASSES = 12


def ring_family(a: Annulus, count: int, subdiv: int, seed: int = 0) -> CurveFamily:
    """
    Radial polylines from S(center, r1) to S(center, r2).

    Directions are quasi-uniform on the unit sphere; each curve has
    ``subdiv`` vertices geometrically spaced in radius.

    Args:
        a: Annulus A(x0, r1, r2)
        count: Number of curves (>= 1)
        subdiv: Vertices per curve (>= 2)
        seed: Direction seed, used only for n >= 4

    Returns:
        CurveFamily labelled with the annulus

    Example:
        >>> fam = ring_family(Annulus.at([0, 0], 1.0, np.e), count=4, subdiv=2)
        >>> len(fam)
        4
    """
    if not isinstance(a, Annulus):
        raise GeometryError(f"ring_family needs an Annulus, got {type(a).__name__}")
    if count < 1:
        raise GeometryError(f"count must be at least 1, got {count}")
    if subdiv < 2:
        raise GeometryError(f"subdiv must be at least 2, got {subdiv}")

    radii = np.geomspace(a.r1, a.r2, subdiv)
    radii[0], radii[-1] = a.r1, a.r2
    directions = sphere_directions(a.n, count, seed=seed)
    origin = a.origin
    curves = tuple(Polyline(origin + radii[:, None] * d[None, :]) for d in directions)
    label = f"ring(c={a.center.to_list()},r1={a.r1:g},r2={a.r2:g})"
    logger.debug(f"Built ring family {label} with {count} curves")
    return CurveFamily(curves, label)


def _fixed_perpendicular(unit: np.ndarray) -> np.ndarray:
    """A unit vector orthogonal to ``unit``, chosen deterministically."""
    if unit.size == 2:
        return np.array([-unit[1], unit[0]])
    axis = np.zeros(unit.size)
    axis[int(np.argmin(np.abs(unit)))] = 1.0
    perp = axis - (axis @ unit) * unit
    return perp / np.linalg.norm(perp)


def _random_perpendicular(unit: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    r = rng.standard_normal(unit.size)
    perp = r - (r @ unit) * unit
    norm = np.linalg.norm(perp)
    return _fixed_perpendicular(unit) if norm == 0.0 else perp / norm


def _segment_gap(p0: np.ndarray, p1: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Distance from ``c`` to each segment [p0[i], p1[i]]."""
    d = p1 - p0
    t = np.clip(np.einsum("ij,ij->i", c - p0, d) / np.einsum("ij,ij->i", d, d), 0.0, 1.0)
    return np.linalg.norm(p0 + t[:, None] * d - c, axis=1)


def _project_out(v: np.ndarray, c: np.ndarray, radius: float) -> np.ndarray:
    offset = v - c
    d = np.linalg.norm(offset, axis=1)
    inside = d < radius
    if not np.any(inside):
        return v
    v = v.copy()
    for j in np.flatnonzero(inside):
        direction = offset[j] / d[j] if d[j] > 0.0 else _fixed_perpendicular(np.eye(v.shape[1])[0])
        v[j] = c + PROJECTION_FACTOR * radius * direction
    return v


def _avoid_balls(vertices: np.ndarray, exclude: Sequence[ExclusionBall]) -> np.ndarray:
    """
    Bend a vertex chain around forbidden balls.

    Vertices inside a ball go to its surface scaled by 1.05; segments that
    still cut a ball get their midpoint inserted and projected in turn.
    """
    v = vertices
    for _ in range(_AVOIDANCE_PASSES):
        changed = False
        for center, radius in exclude:
            c = np.asarray(center, dtype=float)
            projected = _project_out(v, c, radius)
            changed |= projected is not v
            v = projected
            cutting = _segment_gap(v[:-1], v[1:], c) < radius
            if np.any(cutting):
                mids = 0.5 * (v[:-1][cutting] + v[1:][cutting])
                v = np.insert(v, np.flatnonzero(cutting) + 1, mids, axis=0)
                changed = True
        if not changed:
            break
    for center, radius in exclude:
        v = _project_out(v, np.asarray(center, dtype=float), radius)
    return v


def connecting_family(
    E: SetLike,
    F: SetLike,
    exclude: Sequence[ExclusionBall] = (),
    count: int = 1,
    jitter: Optional[float] = None,
    bow: float = 0.0,
    pairing: str = "random",
    subdiv: int = 32,
    seed: int = 0,
) -> CurveFamily:
    """
    Polylines joining points of E to points of F.

    Each curve is a segment from a point of E to a point of F perturbed by a
    sine bump perpendicular to the chord: a random amplitude in
    [-jitter, jitter] plus a deterministic bulge of ``bow`` times the chord
    length, alternating sides with the curve index. Vertices falling inside
    a forbidden ball are pushed out to 1.05 times its radius.

    Curve ``i`` draws from its own stream ``default_rng([seed, i])``, so the
    same index gives the same curve whatever ``count`` is.

    Args:
        E: Sampled continuum where curves start
        F: Sampled continuum where curves end
        exclude: Forbidden balls as (center, radius)
        count: Number of curves
        jitter: Random bump amplitude; defaults to 10% of dist(E, F)
        bow: Deterministic bulge as a fraction of chord length
        pairing: "random" picks endpoints at random, "index" takes E[i], F[i]
        subdiv: Vertices per curve before avoidance refinement
        seed: Base seed

    Returns:
        CurveFamily with exactly ``count`` curves

    Raises:
        GeometryError: If E and F intersect or an endpoint lies in a forbidden ball
    """
    e_set, f_set = as_point_set(E), as_point_set(F)
    gap = dist(e_set, f_set)
    scale = max(1.0, float(np.abs(e_set.points).max()), float(np.abs(f_set.points).max()))
    if gap <= 1e-12 * scale:
        raise GeometryError("continua E and F must be disjoint")
    if count < 1:
        raise GeometryError(f"count must be at least 1, got {count}")
    if subdiv < 2:
        raise GeometryError(f"subdiv must be at least 2, got {subdiv}")
    if pairing not in ("random", "index"):
        raise GeometryError(f"unknown pairing {pairing!r}")
    for center, radius in exclude:
        c = np.asarray(center, dtype=float)
        for name, pts in (("E", e_set.points), ("F", f_set.points)):
            if np.any(np.linalg.norm(pts - c, axis=1) < radius):
                raise GeometryError(f"{name} meets the forbidden ball B({c.tolist()}, {radius})")

    amplitude = DEFAULT_JITTER_FRACTION * gap if jitter is None else float(jitter)
    s = np.linspace(0.0, 1.0, subdiv)
    bump = np.sin(np.pi * s)
    curves = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        if pairing == "index":
            e, f = e_set.points[i % len(e_set)], f_set.points[i % len(f_set)]
        else:
            e = e_set.points[rng.integers(len(e_set))]
            f = f_set.points[rng.integers(len(f_set))]
        chord = f - e
        chord_length = float(np.linalg.norm(chord))
        unit = chord / chord_length
        side = 1.0 if i % 2 == 0 else -1.0
        shift = side * bow * chord_length * _fixed_perpendicular(unit)
        shift = shift + rng.uniform(-amplitude, amplitude) * _random_perpendicular(unit, rng)
        vertices = e + s[:, None] * chord + bump[:, None] * shift
        if exclude:
            vertices = _avoid_balls(vertices, exclude)
        curves.append(Polyline.through(vertices))
    return CurveFamily(tuple(curves), f"connect(|E|={len(e_set)},|F|={len(f_set)},seed={seed})")


def map_family(f, fam: CurveFamily, refine: int = 0) -> CurveFamily:
    """
    Image family f(Gamma).

    Each polyline is refined with ``refine`` extra vertices per segment and
    then mapped vertex by vertex.

    Args:
        f: Mapping handle with ``name``, ``domain(points)`` and ``evaluate(points)``
        fam: Source family
        refine: Intermediate vertices inserted per segment

    Returns:
        Image CurveFamily labelled ``name(label)``

    Raises:
        DomainError: If a vertex lies outside the mapping's domain
    """
    images = []
    for i, curve in enumerate(fam):
        refined = curve.refine(refine)
        inside = np.asarray(f.domain(refined.vertices), dtype=bool)
        if not np.all(inside):
            j = int(np.flatnonzero(~inside)[0])
            raise DomainError(
                f"{refined.vertices[j].tolist()} is outside the domain of {f.name}",
                curve_index=i,
                vertex_index=j,
            )
        images.append(Polyline(f.evaluate(refined.vertices)))
    return CurveFamily(tuple(images), f"{f.name}({fam.label})")
