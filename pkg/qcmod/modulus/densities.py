"""
Radial Test Densities

Test functions eta on (r1, r2) for the ring inequality, and their
admissibility check: the integral of eta over (r1, r2) must be at least 1.
"""

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ..exceptions import InadmissibleDensityError
from ..schemas.results import EtaCheck
from ..settings import ADMISSIBILITY_SLACK
from .quadrature import adaptive_integral


def _check_radii(r1: float, r2: float) -> None:
    if not (0.0 < r1 < r2 < math.inf):
        raise InadmissibleDensityError(f"density radii must satisfy 0 < r1 < r2, got {r1}, {r2}")


@dataclass(frozen=True)
class StepDensity:
    """eta = 1/(r2 - r1) on [r1, r2], zero elsewhere."""

    r1: float
    r2: float
    kind: str = field(default="step", init=False)

    def __post_init__(self):
        _check_radii(self.r1, self.r2)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        inside = (t >= self.r1) & (t <= self.r2)
        return np.where(inside, 1.0 / (self.r2 - self.r1), 0.0)

    def closed_form_integral(self) -> float:
        return 1.0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "r1": self.r1, "r2": self.r2}


@dataclass(frozen=True)
class ExtremalDensity:
    """eta = 1/(t log(r2/r1)) on [r1, r2], the extremal density of the ring."""

    r1: float
    r2: float
    kind: str = field(default="extremal", init=False)

    def __post_init__(self):
        _check_radii(self.r1, self.r2)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        inside = (t >= self.r1) & (t <= self.r2)
        safe = np.where(inside, t, 1.0)
        return np.where(inside, 1.0 / (safe * math.log(self.r2 / self.r1)), 0.0)

    def closed_form_integral(self) -> float:
        return 1.0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "r1": self.r1, "r2": self.r2}


@dataclass(frozen=True, eq=False)
class TabulatedDensity:
    """Piecewise-linear eta through (knots, values), zero outside the knots."""

    knots: np.ndarray
    values: np.ndarray
    kind: str = field(default="tabulated", init=False)

    def __post_init__(self):
        knots = np.array(self.knots, dtype=float)
        values = np.array(self.values, dtype=float)
        if knots.ndim != 1 or knots.size < 2 or knots.shape != values.shape:
            raise InadmissibleDensityError("need at least two knots and one value per knot")
        if knots[0] <= 0.0 or np.any(np.diff(knots) <= 0.0):
            raise InadmissibleDensityError("knots must be positive and strictly increasing")
        if np.any(values < 0.0) or not np.all(np.isfinite(values)):
            raise InadmissibleDensityError("tabulated values must be finite and nonnegative")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "values", values)

    @property
    def r1(self) -> float:
        return float(self.knots[0])

    @property
    def r2(self) -> float:
        return float(self.knots[-1])

    def __call__(self, t):
        return np.interp(np.asarray(t, dtype=float), self.knots, self.values, left=0.0, right=0.0)

    def closed_form_integral(self) -> None:
        return None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "knots": self.knots.tolist(), "values": self.values.tolist()}


RadialTestDensity = Union[StepDensity, ExtremalDensity, TabulatedDensity]


def eta_integral(eta: RadialTestDensity) -> float:
    """Integral of eta over its support, closed form when one exists."""
    closed = eta.closed_form_integral()
    if closed is not None:
        return closed
    return adaptive_integral(
        lambda t: float(eta(t)), eta.r1, eta.r2, epsabs=1e-10, points=eta.knots[1:-1]
    )


def admissible_eta(eta: RadialTestDensity) -> EtaCheck:
    """
    Check the normalization integral of eta over (r1, r2) is at least 1.

    Args:
        eta: Step, extremal or tabulated test density

    Returns:
        EtaCheck with the integral and the admissibility verdict

    Example:
        >>> admissible_eta(StepDensity(0.25, 0.5)).admissible
        True
    """
    integral = eta_integral(eta)
    return EtaCheck(integral=integral, admissible=integral >= 1.0 - ADMISSIBILITY_SLACK)
