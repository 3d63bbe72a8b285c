"""
Annulus Recentering

Given 0 < eps1 < eps1* and centers a_k with |a_k - x1| < 1/k, picks k0
and radii eps1 < eps_t1 < eps_t2 < eps1* with

    B(x1, eps1) ⊂ B(a, eps_t1) ⊂ B(a, eps_t2) ⊂ B(x1, eps1*),  a = a_{k0+1},

so a ring inequality about a bounds one about x1.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from ..curves import ring_family
from ..exceptions import GeometryError
from ..geometry import Annulus, PointLike, as_point, sphere_points
from ..modulus import Grid, discrete_modulus, eq4_bound
from ..schemas.reports import RecenterResult
from ..settings import DEFAULT_MAX_ITER, DEFAULT_TOL, default_resolution

logger = logging.getLogger(__name__)


CHAIN_SAMPLES = 1000
_CHAIN_RTOL = 1e-12


def recenter_radii(eps1: float, eps1_star: float) -> tuple:
    """
    k0 = max(1, ceil(3 / (eps1* - eps1))), eps_t1 = eps1 + 1/(k0+1), eps_t2 = eps1 + 2/(k0+1).

    Example:
        >>> recenter_radii(1.0, 2.0)
        (3, 1.25, 1.5)
    """
    if not (0.0 < eps1 < eps1_star):
        raise GeometryError(f"need 0 < eps1 < eps1_star, got {eps1}, {eps1_star}")
    k0 = max(1, math.ceil(3.0 / (eps1_star - eps1) - 1e-12))
    return k0, eps1 + 1.0 / (k0 + 1), eps1 + 2.0 / (k0 + 1)


def _within(points: np.ndarray, center: np.ndarray, radius: float) -> bool:
    return bool(np.all(np.linalg.norm(points - center, axis=1) <= radius * (1.0 + _CHAIN_RTOL)))


def check_chain(
    x1: np.ndarray, a: np.ndarray, eps1: float, eps_t1: float, eps_t2: float, eps1_star: float,
    samples: int = CHAIN_SAMPLES,
) -> bool:
    """Inclusion chain checked on sampled boundary spheres, each in the closure of the next ball."""
    if not (eps1 < eps_t1 < eps_t2 < eps1_star):
        return False
    return (
        _within(sphere_points(x1, eps1, samples), a, eps_t1)
        and _within(sphere_points(a, eps_t1, samples), a, eps_t2)
        and _within(sphere_points(a, eps_t2, samples), x1, eps1_star)
    )


def recenter_annulus(
    x1: PointLike,
    eps1: float,
    eps1_star: float,
    direction: Optional[Sequence[float]] = None,
    samples: int = CHAIN_SAMPLES,
    q_l1: Optional[float] = None,
    compute_moduli: bool = False,
    fam_size: int = 360,
    subdiv: int = 32,
    resolution: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    threads: Optional[int] = None,
) -> RecenterResult:
    """
    Recenter A(x1, eps1, eps1*) about a point a at distance 1/(k0+1) from x1.

    Args:
        x1: Original center
        eps1: Inner radius
        eps1_star: Outer radius
        direction: Direction from x1 to a; the first axis by default
        samples: Sphere points per inclusion check
        q_l1: ||Q||_1, to report the bound ||Q||_1 / (eps_t2 - eps_t1)^n
        compute_moduli: Also compare the moduli of the two ring families

    Returns:
        RecenterResult
    """
    center = as_point(x1).array
    n = center.size
    k0, eps_t1, eps_t2 = recenter_radii(eps1, eps1_star)
    if direction is None:
        unit = np.zeros(n)
        unit[0] = 1.0
    else:
        unit = np.asarray(direction, dtype=float)
        if unit.shape != (n,) or not np.any(unit):
            raise GeometryError(f"direction must be a nonzero vector of dimension {n}")
        unit = unit / np.linalg.norm(unit)
    a = center + unit / (k0 + 1)

    checked = check_chain(center, a, eps1, eps_t1, eps_t2, eps1_star, samples)
    bound = eq4_bound(q_l1, eps_t1, eps_t2, n) if q_l1 is not None else None

    outer = inner = minorized = None
    if compute_moduli:
        fam_outer = ring_family(Annulus.at(center, eps1, eps1_star), fam_size, subdiv, seed=seed)
        fam_inner = ring_family(Annulus.at(a, eps_t1, eps_t2), fam_size, subdiv, seed=seed)
        vertices = np.vstack([fam_outer.all_vertices, fam_inner.all_vertices])
        grid = Grid.fit(vertices, resolution or default_resolution(n))
        outer = discrete_modulus(fam_outer, grid, tol=tol, max_iter=max_iter, threads=threads)
        inner = discrete_modulus(fam_inner, grid, tol=tol, max_iter=max_iter, threads=threads)
        minorized = outer.value <= inner.value + 2.0 * tol * inner.value

    logger.info(
        f"Recentered A({center.tolist()}, {eps1:g}, {eps1_star:g}): k0={k0} "
        f"eps_t1={eps_t1:g} eps_t2={eps_t2:g} chain={checked}"
    )
    return RecenterResult(
        k0=k0,
        eps_t1=eps_t1,
        eps_t2=eps_t2,
        center=a.tolist(),
        centers_checked=checked,
        bound=bound,
        outer_modulus=outer,
        inner_modulus=inner,
        minorized=minorized,
    )
