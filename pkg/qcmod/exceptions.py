"""
Exceptions

Error types raised by the toolkit. Each one also derives from the builtin
exception that fits, so callers can catch ``ValueError`` for bad input the
same way they would anywhere else.
"""

from typing import Optional, Sequence


class QcmodError(Exception):
    """Base class for every error raised by qcmod."""


class DimensionMismatchError(QcmodError, ValueError):
    """Points or sets of different dimension were combined."""


class GeometryError(QcmodError, ValueError):
    """Invalid geometric input (annulus radii, polyline vertices, empty sets)."""


class DomainError(QcmodError, ValueError):
    """A point lies outside the domain of a mapping or formula."""

    def __init__(
        self,
        message: str,
        curve_index: Optional[int] = None,
        vertex_index: Optional[int] = None,
    ):
        if curve_index is not None:
            message = f"curve {curve_index}, vertex {vertex_index}: {message}"
        super().__init__(message)
        self.curve_index = curve_index
        self.vertex_index = vertex_index


class GridError(QcmodError, ValueError):
    """A grid is malformed or a curve leaves it."""


class InadmissibleDensityError(QcmodError, ValueError):
    """A test density eta or a grid density rho is not admissible."""


class DivergentIntegralError(QcmodError, ArithmeticError):
    """Quadrature refinement indicates a divergent integral."""

    def __init__(self, message: str, partial_values: Sequence[float] = ()):
        super().__init__(message)
        self.partial_values = list(partial_values)
