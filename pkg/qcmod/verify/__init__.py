"""
Verification Module

Harnesses tying modulus estimates to the ring inequality, weak flatness,
annulus recentering and cluster sets at boundary points.
"""

from .ring import (
    fit_image_grid,
    step_bound_chain,
    verify_general_inequality,
    verify_ring_inequality,
    within_slack,
)
from .flatness import crossing_family, weak_flatness_probe
from .recenter import check_chain, recenter_annulus, recenter_radii
from .cluster import cluster_probe, extension_verdict

__all__ = [
    "step_bound_chain",
    "verify_general_inequality",
    "verify_ring_inequality",
    "within_slack",
    "fit_image_grid",
    "crossing_family",
    "weak_flatness_probe",
    "check_chain",
    "recenter_annulus",
    "recenter_radii",
    "cluster_probe",
    "extension_verdict",
]
