"""
Curves Module

Polyline curves, curve families and the generators used to sample them.
"""

from .polyline import CurveFamily, Polyline, length
from .generators import connecting_family, map_family, ring_family

__all__ = [
    "CurveFamily",
    "Polyline",
    "length",
    "connecting_family",
    "map_family",
    "ring_family",
]
