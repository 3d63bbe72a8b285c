"""
Geometry Module

Points of the extended space, the chordal metric, balls, spheres, annuli,
set diameters/distances and sphere-crossing tests.
"""

from .points import (
    ExtendedPoint,
    PointLike,
    as_array,
    as_point,
    chordal_dist,
    chordal_pairwise,
    invert,
)
from .sets import (
    Annulus,
    PointSet,
    chordal_ball_contains,
    crosses_sphere,
    diam,
    diam_h,
    dist,
    dist_h,
    geometric_radii,
    sphere_directions,
    sphere_points,
)

__all__ = [
    "ExtendedPoint",
    "PointLike",
    "as_array",
    "as_point",
    "chordal_dist",
    "chordal_pairwise",
    "invert",
    "Annulus",
    "PointSet",
    "chordal_ball_contains",
    "crosses_sphere",
    "diam",
    "diam_h",
    "dist",
    "dist_h",
    "geometric_radii",
    "sphere_directions",
    "sphere_points",
]
