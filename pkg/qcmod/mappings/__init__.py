"""
Mappings Module

The radial stretch example, its inverse and dilatation, the L^p
integrability threshold, and named mapping handles.
"""

from .radial import (
    RadialStretch,
    Q_radial,
    integrability_threshold,
    lp_norm_Q,
    radial_forward,
    radial_inverse,
)
from .base import MAPPINGS, MappingHandle, get_mapping, identity_mapping

__all__ = [
    "RadialStretch",
    "Q_radial",
    "integrability_threshold",
    "lp_norm_Q",
    "radial_forward",
    "radial_inverse",
    "MAPPINGS",
    "MappingHandle",
    "get_mapping",
    "identity_mapping",
]
