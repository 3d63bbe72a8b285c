"""
Analytic Moduli and Bounds

Closed-form ring moduli, the radial right-hand side of the ring
inequality, the L^1 step-density bound and the weak-flatness lower bound.
"""

import math
from typing import Callable

from scipy.special import gamma

from ..exceptions import GeometryError
from ..geometry import Annulus
from .densities import RadialTestDensity
from .quadrature import adaptive_integral


def sphere_area(n: int) -> float:
    """Surface area omega_{n-1} = 2 pi^(n/2) / Gamma(n/2) of the unit sphere in R^n."""
    if n < 2:
        raise GeometryError(f"dimension must be at least 2, got {n}")
    return float(2.0 * math.pi ** (n / 2.0) / gamma(n / 2.0))


def analytic_ring_modulus(n: int, r1: float, r2: float) -> float:
    """
    Modulus of the family joining the boundary spheres of A(x0, r1, r2).

    Equals omega_{n-1} * log(r2/r1)^(1-n).

    Args:
        n: Dimension (>= 2)
        r1: Inner radius
        r2: Outer radius

    Returns:
        The modulus

    Raises:
        GeometryError: If not 0 < r1 < r2

    Example:
        >>> round(analytic_ring_modulus(2, 1.0, math.e), 6)
        6.283185
    """
    if not (0.0 < r1 < r2 < math.inf):
        raise GeometryError(f"ring radii must satisfy 0 < r1 < r2, got {r1}, {r2}")
    return sphere_area(n) * math.log(r2 / r1) ** (1 - n)


def rhs_integral(
    Qr: Callable[[float], float], eta: RadialTestDensity, a: Annulus, n: int
) -> float:
    """
    Right side of the ring inequality, the integral of Q * eta^n(|x - x0|) over A.

    Both factors are radial, so the integral reduces to
    omega_{n-1} * integral of Q(r) eta(r)^n r^(n-1) over (r1, r2).

    Args:
        Qr: Dilatation as a function of r = |x - x0|
        eta: Radial test density
        a: Annulus A(x0, r1, r2)
        n: Dimension

    Returns:
        The integral

    Raises:
        DivergentIntegralError: If quadrature refinement shows divergence
    """
    lo, hi = max(a.r1, eta.r1), min(a.r2, eta.r2)
    if lo >= hi:
        return 0.0

    def integrand(r: float) -> float:
        return float(Qr(r)) * float(eta(r)) ** n * r ** (n - 1)

    knots = getattr(eta, "knots", None)
    points = None if knots is None else list(knots)
    return sphere_area(n) * adaptive_integral(integrand, lo, hi, epsabs=1e-9, points=points)


def eq4_bound(Q_l1: float, eps1: float, eps1_star: float, n: int) -> float:
    """
    The bound ||Q||_1 / (eps1* - eps1)^n from the step test density.

    Raises:
        GeometryError: If eps1 >= eps1_star, eps1 <= 0 or Q_l1 < 0
    """
    if not (0.0 < eps1 < eps1_star):
        raise GeometryError(f"need 0 < eps1 < eps1_star, got {eps1}, {eps1_star}")
    if Q_l1 < 0.0:
        raise GeometryError(f"an L^1 norm is nonnegative, got {Q_l1}")
    return Q_l1 / (eps1_star - eps1) ** n


def weak_flat_lower_bound(c_n: float, eps0: float, eps: float) -> float:
    """Lower bound c_n * log(eps0/eps) for families joining S(x0, eps) and S(x0, eps0)."""
    if not (0.0 < eps < eps0):
        raise GeometryError(f"need 0 < eps < eps0, got eps={eps}, eps0={eps0}")
    if c_n <= 0.0:
        raise GeometryError(f"c_n must be positive, got {c_n}")
    return c_n * math.log(eps0 / eps)


def weak_flat_radius(c_n: float, eps0: float, P: float, margin: float = 1e-6) -> float:
    """Radius eps with c_n * log(eps0/eps) = P * (1 + margin), so the bound exceeds P."""
    if c_n <= 0.0 or eps0 <= 0.0:
        raise GeometryError(f"need c_n > 0 and eps0 > 0, got {c_n}, {eps0}")
    if P <= 0.0:
        raise GeometryError(f"P must be positive, got {P}")
    return eps0 * math.exp(-(P / c_n) * (1.0 + margin))
