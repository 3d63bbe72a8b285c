"""
Mapping Handles

A uniform interface (evaluate, domain, description) over the identity, the
radial stretch and its inverse, and a registry addressable by name.
"""

from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Dict, Optional

import numpy as np

from ..exceptions import DomainError
from .radial import (
    RadialStretch,
    Q_radial,
    forward_domain,
    inverse_domain,
    radial_forward,
    radial_inverse,
)


@dataclass(frozen=True)
class MappingHandle:
    """
    A mapping of point arrays with a declared domain.

    ``evaluate`` and ``domain`` take an array of points, one per row;
    ``evaluate`` is total on the domain.
    """

    name: str
    n: int
    evaluate: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    domain: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    description: str = ""
    params: Dict[str, float] = field(default_factory=dict)
    dilatation: Optional[Callable] = field(default=None, repr=False)

    def __call__(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        rows = np.atleast_2d(pts)
        if not np.all(self.domain(rows)):
            raise DomainError(f"point outside the domain of {self.name}")
        image = self.evaluate(rows)
        return image if pts.ndim == 2 else image[0]

    def to_dict(self) -> dict:
        return {"name": self.name, "n": self.n, "params": dict(self.params)}


def identity_mapping(n: int) -> MappingHandle:
    return MappingHandle(
        name="identity",
        n=n,
        evaluate=lambda pts: np.array(pts, dtype=float),
        domain=lambda pts: np.ones(len(np.atleast_2d(pts)), dtype=bool),
        description="identity of R^n",
        dilatation=lambda r: np.ones_like(np.asarray(r, dtype=float)) if np.ndim(r) else 1.0,
    )


def radial_mapping(alpha: float, n: int, extended: bool = False) -> MappingHandle:
    """The radial stretch f, or its continuation to the ball minus 0 when ``extended``."""
    m = RadialStretch(alpha, n)
    return MappingHandle(
        name="radial-extended" if extended else "radial",
        n=n,
        evaluate=partial(radial_forward, m=m, include_puncture=extended),
        domain=partial(forward_domain, m=m, include_puncture=extended),
        description=f"(1+|x|^{alpha:g}) x/|x| on the unit ball minus "
        + ("{0}" if extended else "{0, e1}"),
        params={"alpha": alpha},
        dilatation=partial(Q_radial, m=m),
    )


def radial_inverse_mapping(alpha: float, n: int, extended: bool = False) -> MappingHandle:
    """The inverse g, or its continuation to the whole ring {1<|y|<2} when ``extended``."""
    m = RadialStretch(alpha, n)
    return MappingHandle(
        name="radial-inverse-extended" if extended else "radial-inverse",
        n=n,
        evaluate=partial(radial_inverse, m=m, include_puncture=extended),
        domain=partial(inverse_domain, m=m, include_puncture=extended),
        description=f"(|y|-1)^(1/{alpha:g}) y/|y| on the ring 1<|y|<2"
        + ("" if extended else " minus {e2}"),
        params={"alpha": alpha},
    )


MAPPINGS = {
    "identity": lambda n, alpha: identity_mapping(n),
    "radial": lambda n, alpha: radial_mapping(alpha, n),
    "radial-extended": lambda n, alpha: radial_mapping(alpha, n, extended=True),
    "radial-inverse": lambda n, alpha: radial_inverse_mapping(alpha, n),
    "radial-inverse-extended": lambda n, alpha: radial_inverse_mapping(alpha, n, extended=True),
}


def get_mapping(name: str, n: int = 2, alpha: float = 1.0) -> MappingHandle:
    """
    Look up a mapping by name.

    Args:
        name: One of ``MAPPINGS``
        n: Dimension
        alpha: Radial-stretch exponent (ignored by the identity)

    Raises:
        KeyError: If the name is unknown
    """
    try:
        factory = MAPPINGS[name]
    except KeyError:
        raise KeyError(f"unknown mapping {name!r}; choose from {sorted(MAPPINGS)}") from None
    return factory(n, alpha)
