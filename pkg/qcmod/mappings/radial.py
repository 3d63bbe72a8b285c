"""
Radial Stretch

The mapping f(x) = (1 + |x|^alpha) x/|x| of the punctured unit ball onto
the ring {1 < |y| < 2}, its inverse g(y) = (|y| - 1)^(1/alpha) y/|y|, its
dilatation Q(r) = ((1 + r^alpha) / (alpha r^alpha))^(n-1) and the L^p
integrability of Q.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import DomainError, GeometryError
from ..geometry import Annulus
from ..modulus.integrals import sphere_area
from ..modulus.quadrature import adaptive_integral
from ..schemas.results import IntegrabilityResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RadialStretch:
    """Parameters of the radial stretch: exponent alpha > 0 and dimension n >= 2."""

    alpha: float
    n: int = 2

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise GeometryError(f"alpha must be positive, got {self.alpha}")
        if self.n < 2:
            raise GeometryError(f"dimension must be at least 2, got {self.n}")

    @property
    def e1(self) -> np.ndarray:
        """The puncture (0, ..., 0, 1/2) of the source domain."""
        point = np.zeros(self.n)
        point[-1] = 0.5
        return point

    @property
    def e2(self) -> np.ndarray:
        """The image puncture f(e1) = (0, ..., 0, 1 + 2^-alpha); (0, ..., 3/2) when alpha = 1."""
        point = np.zeros(self.n)
        point[-1] = 1.0 + 0.5 ** self.alpha
        return point

    def image_radius(self, r):
        """|f(x)| = 1 + r^alpha for |x| = r."""
        return 1.0 + np.asarray(r, dtype=float) ** self.alpha

    def image_annulus(self, a: Annulus) -> Annulus:
        """f maps A(0, r1, r2) onto A(0, 1 + r1^alpha, 1 + r2^alpha)."""
        if np.any(a.origin != 0.0) or a.n != self.n or a.r2 > 1.0:
            raise GeometryError("only annuli about 0 inside the unit ball have a ring image")
        return Annulus.at(a.origin, 1.0 + a.r1 ** self.alpha, 1.0 + a.r2 ** self.alpha)


def _rows(points, n: int) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    rows = np.atleast_2d(pts)
    if rows.shape[1] != n:
        raise DomainError(f"expected points of dimension {n}, got {rows.shape[1]}")
    return rows


def _check_puncture(rows: np.ndarray, puncture: np.ndarray, name: str) -> None:
    hit = np.all(rows == puncture, axis=1)
    if np.any(hit):
        raise DomainError(f"{name} is excluded from the domain")


def forward_domain(points, m: RadialStretch, include_puncture: bool = False) -> np.ndarray:
    """Mask of points with 0 < |x| < 1 and, unless included, x != e1."""
    rows = _rows(points, m.n)
    r = np.linalg.norm(rows, axis=1)
    inside = (r > 0.0) & (r < 1.0)
    if not include_puncture:
        inside &= ~np.all(rows == m.e1, axis=1)
    return inside


def inverse_domain(points, m: RadialStretch, include_puncture: bool = False) -> np.ndarray:
    """Mask of points with 1 < |y| < 2 and, unless included, y != e2."""
    rows = _rows(points, m.n)
    r = np.linalg.norm(rows, axis=1)
    inside = (r > 1.0) & (r < 2.0)
    if not include_puncture:
        inside &= ~np.all(rows == m.e2, axis=1)
    return inside


def radial_forward(x, m: RadialStretch, include_puncture: bool = False) -> np.ndarray:
    """
    Evaluate f(x) = (1 + |x|^alpha) x/|x|.

    Accepts one point or an array of points (one per row).

    Raises:
        DomainError: If |x| is not in (0, 1), or x = e1 unless ``include_puncture``

    Example:
        >>> radial_forward([0.0, 0.5], RadialStretch(1.0))
        array([0. , 1.5])
    """
    rows = _rows(x, m.n)
    r = np.linalg.norm(rows, axis=1)
    if np.any((r <= 0.0) | (r >= 1.0)):
        raise DomainError("radial stretch needs 0 < |x| < 1")
    if not include_puncture:
        _check_puncture(rows, m.e1, "e1")
    image = ((1.0 + r ** m.alpha) / r)[:, None] * rows
    return image if np.ndim(x) == 2 else image[0]


def radial_inverse(y, m: RadialStretch, include_puncture: bool = False) -> np.ndarray:
    """
    Evaluate g(y) = (|y| - 1)^(1/alpha) y/|y|.

    Raises:
        DomainError: If |y| is not in (1, 2), or y = e2 unless ``include_puncture``
    """
    rows = _rows(y, m.n)
    r = np.linalg.norm(rows, axis=1)
    if np.any((r <= 1.0) | (r >= 2.0)):
        raise DomainError("inverse radial stretch needs 1 < |y| < 2")
    if not include_puncture:
        _check_puncture(rows, m.e2, "e2")
    image = ((r - 1.0) ** (1.0 / m.alpha) / r)[:, None] * rows
    return image if np.ndim(y) == 2 else image[0]


def Q_radial(r, m: RadialStretch):
    """
    Dilatation Q(r) = ((1 + r^alpha) / (alpha r^alpha))^(n-1) for 0 < r < 1.

    Returns a float for scalar input, an array otherwise.

    Raises:
        DomainError: If some r is outside (0, 1)
    """
    radius = np.asarray(r, dtype=float)
    if np.any((radius <= 0.0) | (radius >= 1.0)):
        raise DomainError("Q is defined for 0 < r < 1")
    power = radius ** m.alpha
    q = ((1.0 + power) / (m.alpha * power)) ** (m.n - 1)
    return float(q) if q.ndim == 0 else q


def integrability_threshold(n: int, p: float) -> float:
    """Q lies in L^p of the unit ball exactly when alpha < n / (p (n - 1))."""
    return n / (p * (n - 1))


def lp_norm_Q(m: RadialStretch, p: float, subdivisions: int = 8) -> IntegrabilityResult:
    """
    L^p norm of Q over the unit ball, or a divergence flag.

    Near r = 0 the integrand behaves like r^e / alpha^(p(n-1)) with
    e = n - 1 - alpha p (n-1). When e is in (-1, 0) the substitution
    r = u^(n/beta), beta = n - alpha p (n-1), makes it regular; otherwise
    plain adaptive quadrature is used. [0, 1] is split into
    ``subdivisions`` equal pieces.

    Args:
        m: Radial stretch parameters
        p: Exponent (>= 1)
        subdivisions: Number of equal pieces of the integration interval

    Returns:
        IntegrabilityResult; ``value`` is set only when finite

    Example:
        >>> lp_norm_Q(RadialStretch(1.0, 2), 1).threshold
        2.0
    """
    if p < 1.0:
        raise ValueError(f"p must be at least 1, got {p}")
    if subdivisions < 1:
        raise ValueError(f"subdivisions must be positive, got {subdivisions}")
    n, alpha = m.n, m.alpha
    threshold = integrability_threshold(n, p)
    if alpha >= threshold:
        logger.info(f"Q is not in L^{p:g}: alpha={alpha:g} >= threshold {threshold:g}")
        return IntegrabilityResult(
            alpha=alpha, p=p, n=n, threshold=threshold, finite=False, divergent=True
        )

    power = p * (n - 1)
    exponent = n - 1 - alpha * power
    if -1.0 < exponent < 0.0:
        beta = exponent + 1.0
        scale = n / beta

        def integrand(u: float) -> float:
            r_alpha = u ** (alpha * scale)
            return scale * ((1.0 + r_alpha) / alpha) ** power * u ** (n - 1)

    else:

        def integrand(r: float) -> float:
            return ((1.0 + r ** alpha) / alpha) ** power * r ** exponent

    edges = np.linspace(0.0, 1.0, subdivisions + 1)
    total = sum(
        adaptive_integral(integrand, lo, hi, epsabs=1e-13, epsrel=1e-12)
        for lo, hi in zip(edges[:-1], edges[1:])
    )
    value = (sphere_area(n) * total) ** (1.0 / p)
    return IntegrabilityResult(alpha=alpha, p=p, n=n, threshold=threshold, finite=True, value=value)
