"""
Settings

Process-wide defaults, overridable through environment variables.
"""

import math
import os
from typing import Optional


# Configuration
DEFAULT_TOL = float(os.getenv("QCMOD_TOL", "1e-4"))
DEFAULT_MAX_ITER = int(os.getenv("QCMOD_MAX_ITER", "20000"))
WEAK_FLAT_CN = float(os.getenv("QCMOD_WEAK_FLAT_CN", "1.0"))
EXTENSION_THRESHOLD = float(os.getenv("QCMOD_EXTENSION_THRESHOLD", "1e-3"))
EXTENSION_MIN_RADII = 3
GRID_PADDING = 0.05
ADMISSIBILITY_SLACK = 1e-12
RESIDUAL_SLACK = 1e-9

DEFAULT_RESOLUTION = {2: 256, 3: 64}
FALLBACK_RESOLUTION = 24
CELLS_ACROSS_IMAGE = 40
MAX_IMAGE_RESOLUTION = {2: 640}


def default_resolution(n: int) -> int:
    """Grid cells per axis used when a caller does not choose one."""
    return DEFAULT_RESOLUTION.get(n, FALLBACK_RESOLUTION)


def image_resolution(n: int, box_width: float, thinnest: float) -> int:
    """
    Cells per axis for a grid fit to image curves.

    Never below ``default_resolution(n)``; raised until the shortest curve
    spans ``CELLS_ACROSS_IMAGE`` cells, up to ``MAX_IMAGE_RESOLUTION`` (no
    raise above n = 2, where the cell count grows too fast).
    """
    base = default_resolution(n)
    if thinnest <= 0.0:
        return base
    wanted = math.ceil(CELLS_ACROSS_IMAGE * box_width / thinnest)
    return max(base, min(wanted, MAX_IMAGE_RESOLUTION.get(n, base)))


def solver_threads() -> Optional[int]:
    """
    Worker cap for constraint assembly.

    Read at call time from ``QCMOD_THREADS`` so a CLI flag or a test can
    change it after import. ``None`` lets the executor pick ``os.cpu_count()``.

    Raises:
        ValueError: If QCMOD_THREADS is set but not a positive integer
    """
    raw = os.getenv("QCMOD_THREADS")
    if not raw:
        return None
    threads = int(raw)
    if threads < 1:
        raise ValueError(f"QCMOD_THREADS must be a positive integer, got {raw!r}")
    return threads


def archive_path() -> Optional[str]:
    """SQLite file for the run archive, from ``QCMOD_ARCHIVE_PATH``."""
    return os.getenv("QCMOD_ARCHIVE_PATH") or None
