"""
qcmod - numerical moduli of curve families

Discrete extremal-length estimates on grids, the radial-stretch example
of a ring Q-homeomorphism, and harnesses that check modulus inequalities,
weak flatness, annulus recentering and boundary extension numerically.
"""

__version__ = "0.1.0"

from .geometry import Annulus, ExtendedPoint, chordal_dist
from .curves import CurveFamily, Polyline, connecting_family, map_family, ring_family
from .modulus import Grid, analytic_ring_modulus, discrete_modulus, rhs_integral
from .mappings import RadialStretch, get_mapping, lp_norm_Q
from .verify import (
    cluster_probe,
    recenter_annulus,
    verify_general_inequality,
    verify_ring_inequality,
    weak_flatness_probe,
)

__all__ = [
    "Annulus",
    "ExtendedPoint",
    "chordal_dist",
    "CurveFamily",
    "Polyline",
    "connecting_family",
    "map_family",
    "ring_family",
    "Grid",
    "analytic_ring_modulus",
    "discrete_modulus",
    "rhs_integral",
    "RadialStretch",
    "get_mapping",
    "lp_norm_Q",
    "cluster_probe",
    "recenter_annulus",
    "verify_general_inequality",
    "verify_ring_inequality",
    "weak_flatness_probe",
]
