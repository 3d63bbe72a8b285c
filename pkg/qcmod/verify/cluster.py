"""
Cluster Set Probe

Samples a mapping on shrinking spheres about a boundary point and measures
how much the images spread. Vanishing oscillation with a stable centroid
means the cluster set is a single point and the mapping extends there.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..exceptions import DomainError, GeometryError
from ..geometry import (
    ExtendedPoint,
    PointLike,
    as_point,
    chordal_ball_contains,
    diam,
    diam_h,
    sphere_directions,
)
from ..mappings import MappingHandle
from ..schemas.reports import ClusterProbe, ClusterSample
from ..settings import EXTENSION_MIN_RADII, EXTENSION_THRESHOLD

logger = logging.getLogger(__name__)


DEFAULT_DIRECTIONS = 64
MONOTONE_SLACK = 0.1


def _probe_points(target, r: float, directions: np.ndarray) -> np.ndarray:
    if target.is_infinite:
        return directions / r
    return target.array + r * directions


def extension_verdict(
    oscillations: Sequence[float],
    threshold: float = EXTENSION_THRESHOLD,
    min_radii: int = EXTENSION_MIN_RADII,
) -> bool:
    """Oscillation ends below ``threshold`` and never grows by more than 10% as radii shrink."""
    osc = list(oscillations)
    if len(osc) < min_radii or osc[-1] >= threshold:
        return False
    return all(b <= a * (1.0 + MONOTONE_SLACK) for a, b in zip(osc, osc[1:]))


def cluster_probe(
    mapping: MappingHandle,
    target: PointLike,
    radii: Sequence[float],
    dirs: int = DEFAULT_DIRECTIONS,
    threshold: float = EXTENSION_THRESHOLD,
    min_radii: int = EXTENSION_MIN_RADII,
    seed: int = 0,
) -> ClusterProbe:
    """
    Images of S(target, r) ∩ domain for each radius.

    For the point at infinity the spheres are |x| = 1/r. The verdict uses
    the chordal oscillation, which stays meaningful when images run off to
    infinity.

    Args:
        mapping: Mapping handle
        target: Boundary point, possibly infinity
        radii: Strictly decreasing positive radii
        dirs: Sample directions per sphere
        threshold: Oscillation cutoff for the extension verdict
        min_radii: Fewest radii that can support an extension verdict
        seed: Direction seed (n >= 4)

    Returns:
        ClusterProbe with per-radius samples and the verdict

    Raises:
        GeometryError: If radii are not strictly decreasing and positive
        DomainError: If a probe sphere misses the domain entirely
    """
    point = as_point(target)
    if point.n != mapping.n:
        raise DomainError(f"target has dimension {point.n}, mapping {mapping.name} has {mapping.n}")
    rs = [float(r) for r in radii]
    if not rs or any(r <= 0.0 for r in rs) or any(b >= a for a, b in zip(rs, rs[1:])):
        raise GeometryError(f"radii must be positive and strictly decreasing, got {rs}")

    directions = sphere_directions(point.n, dirs, seed=seed)
    samples = []
    for r in rs:
        pts = _probe_points(point, r, directions)
        inside = np.asarray(mapping.domain(pts), dtype=bool)
        if not np.any(inside):
            raise DomainError(f"sphere of radius {r:g} about {point} misses the domain of {mapping.name}")
        images = mapping.evaluate(pts[inside])
        samples.append(
            ClusterSample(
                radius=r,
                points=images.tolist(),
                chordal_oscillation=diam_h(images),
                euclidean_oscillation=diam(images),
            )
        )
        logger.debug(f"radius {r:g}: {int(inside.sum())} points, oscillation {samples[-1].chordal_oscillation:.3g}")

    extends = extension_verdict([s.chordal_oscillation for s in samples], threshold, min_radii)
    limit: Optional[list] = None
    limit_infinite = False
    if extends:
        last = np.asarray(samples[-1].points)
        if np.all(chordal_ball_contains(last, ExtendedPoint.infinity(point.n), threshold)):
            limit_infinite = True
        else:
            limit = np.mean(last, axis=0).tolist()
    logger.info(f"Cluster probe of {mapping.name} at {point}: extends={extends}")
    return ClusterProbe(
        mapping=mapping.name,
        n=point.n,
        boundary_point=point.to_list(),
        radii=rs,
        samples=samples,
        extends=extends,
        limit=limit,
        limit_infinite=limit_infinite,
    )
