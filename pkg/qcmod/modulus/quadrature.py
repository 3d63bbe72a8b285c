"""
Adaptive Quadrature

Wrapper around ``scipy.integrate.quad`` that integrates over 1, 2, 4, ...
equal pieces and reports divergence instead of a number.
"""

import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from ..exceptions import DivergentIntegralError

logger = logging.getLogger(__name__)


PIECE_LEVELS = (1, 2, 4, 8, 16)
SUBINTERVAL_LIMIT = 200
# quad's error estimate above this share of the value is not a result
UNRELIABLE_RTOL = 1e-6
DIVERGENCE_HINT = "divergent"


def _doubled_twice(values: Sequence[float]) -> bool:
    if len(values) < 3:
        return False
    a, b, c = (abs(v) for v in values[-3:])
    return a > 0.0 and b >= 2.0 * a and c >= 2.0 * b


def _edges(a: float, b: float, pieces: int, inner: Sequence[float]) -> np.ndarray:
    return np.unique(np.concatenate([np.linspace(a, b, pieces + 1), inner]))


def _integrate_pieces(
    func: Callable[[float], float], edges: np.ndarray, epsabs: float, epsrel: float
) -> Tuple[float, float, Optional[str]]:
    """Sum of quad over consecutive edges, the summed error and quad's worst message."""
    total, error, message = 0.0, 0.0, None
    for lo, hi in zip(edges[:-1], edges[1:]):
        out = quad(
            func, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=SUBINTERVAL_LIMIT, full_output=1
        )
        total += out[0]
        error += out[1]
        # a fourth element is quad's message for a nonzero status
        if len(out) > 3 and (message is None or DIVERGENCE_HINT in out[3]):
            message = str(out[3])
    return total, error, message


def _divergent_status(messages: Sequence[Optional[str]]) -> bool:
    return len(messages) >= 2 and all(m is not None and DIVERGENCE_HINT in m for m in messages[-2:])


def adaptive_integral(
    func: Callable[[float], float],
    a: float,
    b: float,
    epsabs: float = 1e-9,
    epsrel: float = 1e-10,
    points: Optional[Sequence[float]] = None,
) -> float:
    """
    Integrate ``func`` over [a, b] with refinement-based divergence detection.

    [a, b] is cut into 1, 2, 4, ... equal pieces (plus ``points``) and the
    value is returned once two successive levels agree and quad flags
    neither.

    Args:
        func: Scalar integrand
        a: Lower limit
        b: Upper limit
        epsabs: Absolute tolerance
        epsrel: Relative tolerance
        points: Interior breakpoints (kinks, knots)

    Returns:
        The integral

    Raises:
        DivergentIntegralError: If a value is not finite, if refinement
            doubles the value twice in a row, if quad calls two successive
            levels divergent, or if the last level is still flagged with a
            large error estimate
    """
    if b <= a:
        return 0.0
    inner = [float(p) for p in (() if points is None else points) if a < p < b]
    values: List[float] = []
    messages: List[Optional[str]] = []
    error = 0.0
    for pieces in PIECE_LEVELS:
        value, error, message = _integrate_pieces(
            func, _edges(a, b, pieces, inner), epsabs, epsrel
        )
        if not np.isfinite(value):
            raise DivergentIntegralError(
                f"integral over [{a:g}, {b:g}] is not finite", values + [value]
            )
        values.append(value)
        messages.append(message)
        if _doubled_twice(values):
            raise DivergentIntegralError(
                f"integral over [{a:g}, {b:g}] doubles under refinement", values
            )
        if _divergent_status(messages):
            raise DivergentIntegralError(
                f"integral over [{a:g}, {b:g}] is divergent: {message}", values
            )
        settled = len(values) >= 2 and abs(values[-1] - values[-2]) <= max(
            epsabs, epsrel * abs(value), error
        )
        if settled and messages[-1] is None and messages[-2] is None:
            return value

    if messages[-1] is not None and error > max(epsabs, UNRELIABLE_RTOL * abs(values[-1])):
        raise DivergentIntegralError(
            f"integral over [{a:g}, {b:g}] does not settle: {messages[-1]}", values
        )
    logger.warning(f"Quadrature over [{a:g}, {b:g}] did not settle; last values {values[-2:]}")
    return values[-1]
