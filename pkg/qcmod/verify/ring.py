"""
Ring Inequality Verification

Certifies instances of M(f(Gamma)) <= integral of Q * eta^n over an
annulus, the general form with a grid density rho, and the chain of bounds
obtained from the step test density.
"""

import logging
from typing import Callable, Optional

import numpy as np

from ..curves import CurveFamily, map_family, ring_family
from ..exceptions import DivergentIntegralError, DomainError, InadmissibleDensityError
from ..geometry import Annulus
from ..mappings import MappingHandle, RadialStretch, Q_radial, lp_norm_Q
from ..mappings.base import radial_mapping
from ..modulus import (
    Grid,
    GridDensity,
    StepDensity,
    RadialTestDensity,
    admissible_eta,
    discrete_modulus,
    eq4_bound,
    rhs_integral,
)
from ..schemas.reports import StepBoundChain, VerificationReport
from ..schemas.results import ModulusEstimate
from ..settings import DEFAULT_MAX_ITER, DEFAULT_TOL, GRID_PADDING, RESIDUAL_SLACK, image_resolution

logger = logging.getLogger(__name__)


DEFAULT_RING_CURVES = 720
DEFAULT_RING_SUBDIV = 64


def within_slack(lhs: float, rhs: float, tol: float) -> bool:
    """One-sided comparison lhs <= rhs + 2 * tol * rhs."""
    return lhs <= rhs + 2.0 * tol * abs(rhs)


def _report(
    lhs: ModulusEstimate, rhs: Optional[float], tol: float, metadata: dict
) -> VerificationReport:
    if rhs is None:
        return VerificationReport(
            lhs=lhs,
            rhs=None,
            rhs_divergent=True,
            satisfied=True if lhs.converged else None,
            margin=None,
            metadata=metadata,
        )
    satisfied = within_slack(lhs.value, rhs, tol) if lhs.converged else None
    return VerificationReport(
        lhs=lhs, rhs=rhs, satisfied=satisfied, margin=rhs - lhs.value, metadata=metadata
    )


def fit_image_grid(image: CurveFamily, resolution: Optional[int] = None) -> Grid:
    """
    Cube grid around the image curves.

    Without an explicit ``resolution`` the cell count follows the
    shortest image curve, so thin image rings still get enough cells
    across.
    """
    vertices = image.all_vertices
    if resolution is None:
        box_width = (1.0 + 2.0 * GRID_PADDING) * float(np.ptp(vertices, axis=0).max())
        thinnest = min(curve.length() for curve in image)
        resolution = image_resolution(image.n, box_width, thinnest)
    return Grid.fit(vertices, resolution)


def _image_modulus(
    image: CurveFamily,
    grid: Optional[Grid],
    resolution: Optional[int],
    tol: float,
    max_iter: int,
    threads: Optional[int],
):
    if grid is None and len(image) > 0:
        grid = fit_image_grid(image, resolution)
    if grid is None:
        return ModulusEstimate(value=0.0, iterations=0, converged=True, residual=0.0), None
    return discrete_modulus(image, grid, tol=tol, max_iter=max_iter, threads=threads), grid


def verify_ring_inequality(
    mapping: MappingHandle,
    Qr: Callable[[float], float],
    a: Annulus,
    eta: RadialTestDensity,
    fam_size: int = DEFAULT_RING_CURVES,
    grid: Optional[Grid] = None,
    subdiv: int = DEFAULT_RING_SUBDIV,
    resolution: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    threads: Optional[int] = None,
) -> VerificationReport:
    """
    Check M(f(Gamma(S1, S2, A))) <= integral over A of Q * eta^n(|x - x0|).

    The left side is the discrete modulus of the image of a ring family on
    ``grid``, or on a grid fit to the image curves. Curves with a vertex
    outside the mapping's domain (a puncture on the annulus) are left out
    and counted in ``metadata["excluded_curves"]``.

    Args:
        mapping: Mapping handle f
        Qr: Dilatation as a function of |x - x0|
        a: Annulus A(x0, r1, r2)
        eta: Radial test density
        fam_size: Number of ring curves
        grid: Image-side grid; fit to the image when omitted
        subdiv: Vertices per ring curve
        resolution: Cells per axis of a fitted grid; by default enough for
            the shortest image curve to cross ``CELLS_ACROSS_IMAGE`` cells
        tol: Solver tolerance; also sets the verdict slack
        max_iter: Solver iteration cap
        seed: Direction seed
        threads: Worker cap for constraint assembly

    Returns:
        VerificationReport; ``satisfied`` is None if the solver did not converge

    Raises:
        InadmissibleDensityError: If eta integrates to less than 1
        DomainError: If no ring curve lies in the mapping's domain
    """
    check = admissible_eta(eta)
    if not check.admissible:
        raise InadmissibleDensityError(
            f"test density integrates to {check.integral:.6g} < 1 over ({eta.r1:g}, {eta.r2:g})"
        )
    if a.n != mapping.n:
        raise DomainError(f"annulus has dimension {a.n}, mapping {mapping.name} has {mapping.n}")

    source = ring_family(a, fam_size, subdiv, seed=seed)
    inside = [i for i, curve in enumerate(source) if np.all(mapping.domain(curve.vertices))]
    excluded = len(source) - len(inside)
    if not inside:
        raise DomainError(f"no curve of {source.label} lies in the domain of {mapping.name}")
    if excluded:
        logger.warning(f"Excluded {excluded} curves of {source.label} meeting a puncture")
        source = source.subfamily(inside)

    image = map_family(mapping, source)
    lhs, used = _image_modulus(image, grid, resolution, tol, max_iter, threads)

    try:
        rhs: Optional[float] = rhs_integral(Qr, eta, a, a.n)
    except DivergentIntegralError as e:
        logger.warning(f"Right side diverges: {e}")
        rhs = None

    metadata = {
        "mapping": mapping.name,
        **mapping.params,
        "annulus": a.to_dict(),
        "eta": eta.to_dict(),
        "grid": used.to_dict() if used is not None else None,
        "tol": tol,
        "seed": seed,
        "curves": len(source),
        "excluded_curves": excluded,
    }
    report = _report(lhs, rhs, tol, metadata)
    logger.info(
        f"Ring inequality for {mapping.name}: lhs={lhs.value:.6g} rhs={rhs} "
        f"satisfied={report.satisfied}"
    )
    return report


def verify_general_inequality(
    mapping: MappingHandle,
    Q_grid: GridDensity,
    fam: CurveFamily,
    rho: GridDensity,
    grid: Optional[Grid] = None,
    resolution: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    threads: Optional[int] = None,
) -> VerificationReport:
    """
    Check M(f(Gamma)) <= sum over cells of Q * rho^n * V.

    ``rho`` and ``Q_grid`` live on the source grid; ``grid`` discretizes
    the image side and is fit to the image curves when omitted.

    Raises:
        InadmissibleDensityError: If some curve of ``fam`` has rho-length below 1
    """
    if len(fam) > 0:
        lengths = rho.line_integrals(fam)
        worst = float(lengths.min())
        if worst < 1.0 - RESIDUAL_SLACK:
            raise InadmissibleDensityError(
                f"density is not admissible: curve {int(np.argmin(lengths))} has length {worst:.6g}"
            )
    rhs = rho.weighted_energy(Q_grid, rho.grid.n)
    image = map_family(mapping, fam)
    lhs, used = _image_modulus(image, grid, resolution, tol, max_iter, threads)

    metadata = {
        "mapping": mapping.name,
        **mapping.params,
        "source_grid": rho.grid.to_dict(),
        "grid": used.to_dict() if used is not None else None,
        "tol": tol,
        "curves": len(fam),
    }
    return _report(lhs, rhs, tol, metadata)


def step_bound_chain(
    m: RadialStretch,
    eps1: float = 0.25,
    eps1_star: float = 0.5,
    fam_size: int = DEFAULT_RING_CURVES,
    subdiv: int = DEFAULT_RING_SUBDIV,
    resolution: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    threads: Optional[int] = None,
) -> StepBoundChain:
    """
    The chain lhs <= rhs <= ||Q||_1 / (eps1* - eps1)^n for the radial stretch.

    Uses the step test density on A(0, eps1, eps1*) and the L^1 norm of Q
    over the whole unit ball.

    Raises:
        DivergentIntegralError: If Q is not integrable for this alpha
    """
    norm = lp_norm_Q(m, 1.0)
    if not norm.finite:
        raise DivergentIntegralError(
            f"Q is not in L^1 for alpha={m.alpha:g} (threshold {norm.threshold:g})"
        )
    a = Annulus.at(np.zeros(m.n), eps1, eps1_star)
    report = verify_ring_inequality(
        radial_mapping(m.alpha, m.n),
        lambda r: Q_radial(r, m),
        a,
        StepDensity(eps1, eps1_star),
        fam_size=fam_size,
        subdiv=subdiv,
        resolution=resolution,
        tol=tol,
        max_iter=max_iter,
        seed=seed,
        threads=threads,
    )
    bound = eq4_bound(norm.value, eps1, eps1_star, m.n)
    holds = bool(report.satisfied) and report.rhs <= bound
    return StepBoundChain(lhs=report.lhs, rhs=report.rhs, q_l1=norm.value, bound=bound, holds=holds)
