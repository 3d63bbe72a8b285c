"""
Discrete Modulus Solver

Computes the discrete modulus of a sampled curve family on a grid:

    minimize   sum_c rho_c^n * V
    subject to sum_c rho_c * l_i(c) >= 1 for every curve i,  rho >= 0

where l_i(c) is the exact length of curve i inside cell c and V the cell
volume. The program is solved through its Lagrangian dual. For multipliers
lam >= 0 the minimizing density is rho(lam) = (L^T lam / (n V))^(1/(n-1)),
and the dual value g(lam) = sum(lam) - (n-1) V sum(rho^n) is a lower bound
on the modulus. Each iteration takes a projected gradient step on lam with
a Polyak step aimed at the best certified value, safeguarded by
backtracking. Every rho(lam), divided by its smallest line integral, is an
admissible density whose energy is an upper bound. The best such density
is returned, so the reported value is always certified.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import sparse

from ..curves import CurveFamily
from ..schemas.results import ModulusEstimate
from ..settings import DEFAULT_MAX_ITER, DEFAULT_TOL
from .grid import Grid, GridDensity

logger = logging.getLogger(__name__)


_MAX_BACKTRACKS = 40
_PROGRESS_EVERY = 500


@dataclass(frozen=True, eq=False)
class ModulusSolution:
    """A certified estimate together with the admissible density achieving it."""

    estimate: ModulusEstimate
    density: GridDensity


def merge_duplicate_rows(matrix: sparse.csr_matrix) -> sparse.csr_matrix:
    """Drop rows identical to an earlier row; identical constraints change nothing."""
    matrix = matrix.tocsr(copy=True)
    matrix.sum_duplicates()
    matrix.sort_indices()
    seen = set()
    keep = []
    for i in range(matrix.shape[0]):
        start, end = matrix.indptr[i], matrix.indptr[i + 1]
        key = (matrix.indices[start:end].tobytes(), matrix.data[start:end].tobytes())
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return matrix[keep]


class _DualProblem:
    """Dual of the modulus program restricted to cells some curve touches."""

    def __init__(self, L: sparse.csr_matrix, volume: float, n: int):
        self.L = L
        self.LT = L.T.tocsr()
        self.volume = volume
        self.n = n

    def density(self, lam: np.ndarray) -> np.ndarray:
        return (self.LT @ lam / (self.n * self.volume)) ** (1.0 / (self.n - 1))

    def dual_value(self, lam: np.ndarray, rho: np.ndarray) -> float:
        return float(lam.sum() - (self.n - 1) * self.volume * np.sum(rho ** self.n))

    def certify(self, rho: np.ndarray) -> Tuple[float, Optional[np.ndarray], np.ndarray]:
        """Energy of rho rescaled to be admissible, the rescaled rho, and L rho."""
        line = self.L @ rho
        smallest = float(line.min())
        if smallest <= 0.0:
            return np.inf, None, line
        scaled = rho / smallest
        return float(self.volume * np.sum(scaled ** self.n)), scaled, line

    def initial_multipliers(self) -> np.ndarray:
        """Best multiple of the all-ones multiplier vector, in closed form."""
        m = self.L.shape[0]
        n = self.n
        column_mass = self.LT @ np.ones(m)
        k = (n - 1) * self.volume * np.sum((column_mass / (n * self.volume)) ** (n / (n - 1)))
        tau = (m * (n - 1) / (n * k)) ** (n - 1)
        return np.full(m, tau)


def solve_modulus(
    fam: CurveFamily,
    grid: Grid,
    exponent: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    threads: Optional[int] = None,
) -> ModulusSolution:
    """
    Discrete modulus of ``fam`` on ``grid`` with the extremal density.

    Args:
        fam: Sampled curve family, inside the grid box
        grid: Discretization of the measure
        exponent: Modulus exponent, defaults to the grid dimension
        tol: Relative tolerance on the duality gap
        max_iter: Iteration cap
        threads: Worker cap for constraint assembly

    Returns:
        ModulusSolution with a certified upper bound and its density

    Raises:
        GridError: If a curve leaves the grid
        ValueError: If exponent < 2 or tol <= 0
    """
    n = grid.n if exponent is None else int(exponent)
    if n < 2:
        raise ValueError(f"modulus exponent must be at least 2, got {n}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be positive, got {max_iter}")

    if len(fam) == 0:
        estimate = ModulusEstimate(value=0.0, iterations=0, converged=True, residual=0.0)
        return ModulusSolution(estimate, GridDensity.constant(grid, 0.0))

    full = merge_duplicate_rows(grid.curve_matrix(fam, threads=threads))
    touched = np.unique(full.indices)
    problem = _DualProblem(full.tocsc()[:, touched].tocsr(), grid.cell_volume, n)
    logger.info(
        f"Solving modulus of {fam.label!r}: {full.shape[0]} distinct curves, "
        f"{touched.size} cells, exponent {n}"
    )

    best_value, best_rho, _ = problem.certify(np.ones(touched.size))
    lam = problem.initial_multipliers()
    rho = problem.density(lam)
    g = problem.dual_value(lam, rho)
    best_dual = g
    value, scaled, line = problem.certify(rho)
    if value < best_value:
        best_value, best_rho = value, scaled

    history = [best_value]
    last_step = np.inf
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        grad = 1.0 - line
        projected = np.where((lam <= 0.0) & (grad < 0.0), 0.0, grad)
        norm2 = float(projected @ projected)
        if norm2 == 0.0:
            converged = True
            break

        step = min(max(best_value - g, 0.0) / norm2, 2.0 * last_step)
        if step <= 0.0:
            step = 1.0 / norm2
        for _ in range(_MAX_BACKTRACKS):
            lam_new = np.maximum(lam + step * grad, 0.0)
            rho_new = problem.density(lam_new)
            g_new = problem.dual_value(lam_new, rho_new)
            delta = lam_new - lam
            if g_new >= g + grad @ delta - (delta @ delta) / (2.0 * step):
                break
            step *= 0.5
        last_step = step
        lam, rho, g = lam_new, rho_new, g_new
        best_dual = max(best_dual, g)

        value, scaled, line = problem.certify(rho)
        if value < best_value:
            best_value, best_rho = value, scaled
        history.append(best_value)

        gap = (best_value - best_dual) / best_value
        if iterations % _PROGRESS_EVERY == 0:
            logger.debug(f"iter {iterations}: value={best_value:.8g} dual={best_dual:.8g} gap={gap:.3g}")
        if gap <= tol:
            converged = True
            break
    else:
        window = min(len(history) - 1, max(10, max_iter // 20))
        change = (history[-1 - window] - history[-1]) / history[-1]
        converged = change <= tol

    residual = max(0.0, 1.0 - float((problem.L @ best_rho).min()))
    values = np.zeros(grid.size)
    values[touched] = best_rho
    estimate = ModulusEstimate(
        value=best_value,
        iterations=iterations,
        converged=converged,
        residual=residual,
        lower_bound=max(0.0, min(best_dual, best_value)),
    )
    if converged:
        logger.info(f"Modulus {best_value:.8g} after {iterations} iterations")
    else:
        logger.warning(f"Modulus solver stopped at {iterations} iterations without converging")
    return ModulusSolution(estimate, GridDensity(grid, values))


def discrete_modulus(
    fam: CurveFamily,
    grid: Grid,
    exponent: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    threads: Optional[int] = None,
) -> ModulusEstimate:
    """
    Certified estimate of the discrete modulus of ``fam`` on ``grid``.

    The value is the energy of an admissible density, hence an upper bound
    on the modulus of the sampled family; ``lower_bound`` brackets it from
    below. Finite samples underestimate the modulus of the continuum family.

    Example:
        >>> discrete_modulus(CurveFamily.empty(), grid).value
        0.0
    """
    return solve_modulus(fam, grid, exponent, tol, max_iter, threads).estimate
