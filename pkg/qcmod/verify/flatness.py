"""
Weak Flatness Probe

Families of curves joining two continua that both cross S(x0, eps) and
S(x0, eps0), avoiding x0, whose modulus grows like c_n * log(eps0/eps).
"""

import logging
import math
from typing import Optional

import numpy as np

from ..curves import CurveFamily, connecting_family
from ..exceptions import GeometryError
from ..geometry import PointLike, as_point
from ..modulus import Grid, discrete_modulus, weak_flat_lower_bound, weak_flat_radius
from ..schemas.reports import WeakFlatnessResult
from ..settings import DEFAULT_MAX_ITER, DEFAULT_TOL, WEAK_FLAT_CN, default_resolution

logger = logging.getLogger(__name__)


DEFAULT_CURVES_PER_HALVING = 8
OUTER_FACTOR = 1.5
BOW = 0.5


def crossing_family(
    x0: PointLike, eps0: float, eps: float, per_halving: int = DEFAULT_CURVES_PER_HALVING, seed: int = 0
) -> CurveFamily:
    """
    Bowed curves around x0 joining E = x0 + t*d to F = x0 - t*d.

    E and F are radial segments on opposite rays for t in
    [eps/2, 1.5*eps0], so both meet S(x0, eps) and S(x0, eps0). Curve k
    joins the two points at t_k = 1.5*eps0 * 2^(-k/per_halving), so a
    smaller eps only appends curves.
    """
    center = as_point(x0).array
    if not (0.0 < eps < eps0):
        raise GeometryError(f"need 0 < eps < eps0, got eps={eps}, eps0={eps0}")
    if per_halving < 1:
        raise GeometryError(f"curves per halving must be positive, got {per_halving}")
    outer = OUTER_FACTOR * eps0
    count = int(math.floor(per_halving * math.log2(outer / (0.5 * eps)) + 1e-9)) + 1
    radii = outer * 2.0 ** (-np.arange(count) / per_halving)
    direction = np.zeros(center.size)
    direction[0] = 1.0
    E = center + radii[:, None] * direction
    F = center - radii[:, None] * direction
    fam = connecting_family(
        E,
        F,
        exclude=[(center, 0.25 * eps)],
        count=count,
        jitter=0.0,
        bow=BOW,
        pairing="index",
        seed=seed,
    )
    return CurveFamily(fam.curves, f"crossing(x0={center.tolist()},eps0={eps0:g},eps={eps:g})")


def weak_flatness_probe(
    x0: PointLike,
    eps0: float,
    P: Optional[float] = None,
    c_n: float = WEAK_FLAT_CN,
    fam_size: int = DEFAULT_CURVES_PER_HALVING,
    grid: Optional[Grid] = None,
    eps: Optional[float] = None,
    resolution: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    threads: Optional[int] = None,
) -> WeakFlatnessResult:
    """
    Choose eps with c_n * log(eps0/eps) > P and measure the crossing family.

    With ``eps`` given instead of ``P``, P is reported as the bound at that
    eps. ``fam_size`` is the number of curves per halving of the scale.

    Args:
        x0: Boundary point probed (finite)
        eps0: Outer radius
        P: Target lower bound
        c_n: Constant of the logarithmic bound
        fam_size: Curves per halving of scale
        grid: Grid for the modulus; fit to the curves when omitted
        eps: Inner radius, overriding the choice from P

    Returns:
        WeakFlatnessResult with the analytic bound and the discrete modulus

    Raises:
        ValueError: If neither P nor eps is given
    """
    if eps0 <= 0.0:
        raise GeometryError(f"eps0 must be positive, got {eps0}")
    if eps is None:
        if P is None:
            raise ValueError("either P or eps is required")
        eps = weak_flat_radius(c_n, eps0, P)
    bound = weak_flat_lower_bound(c_n, eps0, eps)
    if P is None:
        P = bound

    fam = crossing_family(x0, eps0, eps, fam_size, seed=seed)
    if grid is None:
        grid = Grid.fit(fam.all_vertices, resolution or default_resolution(fam.n))
    estimate = discrete_modulus(fam, grid, tol=tol, max_iter=max_iter, threads=threads)
    logger.info(
        f"Weak flatness at {as_point(x0)}: eps={eps:.6g} bound={bound:.6g} "
        f"modulus={estimate.value:.6g} over {len(fam)} curves"
    )
    return WeakFlatnessResult(
        eps=eps, eps0=eps0, P=P, c_n=c_n, bound=bound, curves=len(fam), discrete=estimate
    )
