"""
Grid Modulus Module

Analytic ring moduli, the discrete extremal-length program on grids,
radial test densities and the integrals and bounds of the ring inequality.
"""

from .grid import Grid, GridDensity
from .densities import (
    ExtremalDensity,
    RadialTestDensity,
    StepDensity,
    TabulatedDensity,
    admissible_eta,
    eta_integral,
)
from .integrals import (
    analytic_ring_modulus,
    eq4_bound,
    rhs_integral,
    sphere_area,
    weak_flat_lower_bound,
    weak_flat_radius,
)
from .quadrature import adaptive_integral
from .solver import ModulusSolution, discrete_modulus, solve_modulus

__all__ = [
    "Grid",
    "GridDensity",
    "ExtremalDensity",
    "RadialTestDensity",
    "StepDensity",
    "TabulatedDensity",
    "admissible_eta",
    "eta_integral",
    "analytic_ring_modulus",
    "eq4_bound",
    "rhs_integral",
    "sphere_area",
    "weak_flat_lower_bound",
    "weak_flat_radius",
    "adaptive_integral",
    "ModulusSolution",
    "discrete_modulus",
    "solve_modulus",
]
