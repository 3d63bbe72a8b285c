"""
qcmod command-line interface

Usage:
    qcmod modulus-ring --n 2 --r1 1 --r2 2.71828 --curves 720 --grid 256
    qcmod verify-ring --map radial --alpha 1 --r1 0.25 --r2 0.5 --eta step
    qcmod verify-general --map identity --r1 1 --r2 2 --curves 100 --grid 64
    qcmod integrability --alpha 1 --p 1 --n 2
    qcmod weakflat --eps0 0.5 --P 2
    qcmod recenter --eps1 1 --eps1-star 2 --compute-moduli
    qcmod cluster --map radial-inverse --alpha 1 --target e2 --radii 1e-2:1e-6

Reports go to stdout (or --output) as JSON with sorted keys, or as one CSV
row with dotted column names. Exit codes: 0 success (a violated inequality
is a result, not an error), 2 invalid parameters, 3 solver did not converge.
"""

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from .curves import ring_family
from .exceptions import QcmodError
from .geometry import Annulus, ExtendedPoint
from .mappings import RadialStretch, get_mapping, lp_norm_Q
from .modulus import (
    ExtremalDensity,
    Grid,
    GridDensity,
    StepDensity,
    analytic_ring_modulus,
    discrete_modulus,
)
from .schemas import ModulusEstimate, RunConfig
from .settings import archive_path, default_resolution
from .verify import (
    cluster_probe,
    recenter_annulus,
    verify_general_inequality,
    verify_ring_inequality,
    weak_flatness_probe,
)

logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_CONVERGED = 3


def _center(config: RunConfig) -> np.ndarray:
    return np.zeros(config.n) if config.center is None else np.asarray(config.center, dtype=float)


def _eta(config: RunConfig):
    cls = StepDensity if config.eta == "step" else ExtremalDensity
    return cls(config.r1, config.r2)


def _target(config: RunConfig) -> ExtendedPoint:
    if config.target == "inf":
        return ExtendedPoint.infinity(config.n)
    if config.target == "0":
        return ExtendedPoint.finite(np.zeros(config.n))
    stretch = RadialStretch(config.alpha, config.n)
    if config.target == "e1":
        return ExtendedPoint.finite(stretch.e1)
    if config.target == "e2":
        return ExtendedPoint.finite(stretch.e2)
    return ExtendedPoint.finite([float(v) for v in config.target.split(",")])


def _dump(model) -> dict:
    return model.model_dump(mode="json")


def _modulus_ring(config: RunConfig) -> Tuple[dict, List[ModulusEstimate]]:
    a = Annulus.at(_center(config), config.r1, config.r2)
    fam = ring_family(a, config.curves, config.subdiv, seed=config.seed)
    grid = Grid.fit(fam.all_vertices, config.grid or default_resolution(config.n))
    estimate = discrete_modulus(fam, grid, tol=config.tol, max_iter=config.max_iter)
    analytic = analytic_ring_modulus(config.n, config.r1, config.r2)
    result = {
        "analytic": analytic,
        "discrete": _dump(estimate),
        "relative_error": (estimate.value - analytic) / analytic,
        "grid": grid.to_dict(),
    }
    return result, [estimate]


def _verify_ring(config: RunConfig) -> Tuple[dict, List[ModulusEstimate]]:
    mapping = get_mapping(config.map, config.n, config.alpha)
    report = verify_ring_inequality(
        mapping,
        mapping.dilatation,
        Annulus.at(_center(config), config.r1, config.r2),
        _eta(config),
        fam_size=config.curves,
        subdiv=config.subdiv,
        resolution=config.grid,
        tol=config.tol,
        max_iter=config.max_iter,
        seed=config.seed,
    )
    return _dump(report), [report.lhs]


def _verify_general(config: RunConfig) -> Tuple[dict, List[ModulusEstimate]]:
    mapping = get_mapping(config.map, config.n, config.alpha)
    center = _center(config)
    fam = ring_family(Annulus.at(center, config.r1, config.r2), config.curves, config.subdiv, config.seed)
    fam = fam.subfamily(i for i, c in enumerate(fam) if np.all(mapping.domain(c.vertices)))
    resolution = config.grid or default_resolution(config.n)
    source = Grid.fit(fam.all_vertices, resolution)
    rho = GridDensity.from_radial(source, _eta(config), center, support=(config.r1, config.r2))
    rho = rho.normalized_for(fam)
    if mapping.name == "identity":
        Q_grid = GridDensity.constant(source, 1.0)
    else:
        Q_grid = GridDensity.from_radial(
            source, mapping.dilatation, np.zeros(config.n), support=(1e-12, 1.0 - 1e-12)
        )
    report = verify_general_inequality(
        mapping, Q_grid, fam, rho, resolution=config.grid, tol=config.tol, max_iter=config.max_iter
    )
    return _dump(report), [report.lhs]


def _integrability(config: RunConfig) -> Tuple[dict, List[ModulusEstimate]]:
    return _dump(lp_norm_Q(RadialStretch(config.alpha, config.n), config.p)), []


def _weakflat(config: RunConfig) -> Tuple[dict, List[ModulusEstimate]]:
    result = weak_flatness_probe(
        _center(config),
        config.eps0,
        P=config.P,
        c_n=config.c_n,
        fam_size=config.per_halving,
        eps=config.eps,
        resolution=config.grid,
        tol=config.tol,
        max_iter=config.max_iter,
        seed=config.seed,
    )
    return _dump(result), [result.discrete]


def _recenter(config: RunConfig) -> Tuple[dict, List[ModulusEstimate]]:
    result = recenter_annulus(
        _center(config),
        config.eps1,
        config.eps1_star,
        q_l1=config.q_l1,
        compute_moduli=config.compute_moduli,
        fam_size=config.curves,
        subdiv=config.subdiv,
        resolution=config.grid,
        tol=config.tol,
        max_iter=config.max_iter,
        seed=config.seed,
    )
    estimates = [m for m in (result.outer_modulus, result.inner_modulus) if m is not None]
    return _dump(result), estimates


def _cluster(config: RunConfig) -> Tuple[dict, List[ModulusEstimate]]:
    mapping = get_mapping(config.map, config.n, config.alpha)
    probe = cluster_probe(
        mapping,
        _target(config),
        config.radii,
        dirs=config.dirs,
        threshold=config.threshold,
        seed=config.seed,
    )
    return _dump(probe), []


COMMANDS = {
    "modulus-ring": _modulus_ring,
    "verify-ring": _verify_ring,
    "verify-general": _verify_general,
    "integrability": _integrability,
    "weakflat": _weakflat,
    "recenter": _recenter,
    "cluster": _cluster,
}


def flatten(data: Any, prefix: str = "") -> Dict[str, Any]:
    """
    Flatten nested dicts into dotted keys; lists become JSON strings.

    Example:
        >>> flatten({"a": {"b": 1}, "c": [1, 2]})
        {'a.b': 1, 'c': '[1, 2]'}
    """
    if isinstance(data, dict):
        flat: Dict[str, Any] = {}
        for key, value in data.items():
            flat.update(flatten(value, f"{prefix}{key}."))
        return flat
    key = prefix[:-1]
    if isinstance(data, list):
        return {key: json.dumps(data)}
    return {key: data}


def render(report: dict, fmt: str) -> str:
    """Serialize a report as JSON or a one-row CSV with a header."""
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    flat = flatten(report)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=sorted(flat), lineterminator="\n")
    writer.writeheader()
    writer.writerow(flat)
    return buffer.getvalue()


def execute(config: RunConfig) -> Tuple[int, Optional[dict], str]:
    """
    Execute one validated config.

    Returns:
        (exit code, report or None, diagnostic); the report embeds the resolved config
    """
    try:
        result, estimates = COMMANDS[config.command](config)
    except (QcmodError, ValueError) as e:
        logger.debug("run failed", exc_info=True)
        return EXIT_INVALID, None, f"error: {e}"

    report = {"command": config.command, "config": config.resolved(), "result": result}
    if any(not estimate.converged for estimate in estimates):
        logger.warning("Solver did not converge; the report is not certified")
        return EXIT_NOT_CONVERGED, report, "error: solver did not converge"
    return EXIT_OK, report, ""


def run(config: RunConfig) -> Tuple[int, str]:
    """Exit code and serialized report (or the one-line diagnostic when there is none)."""
    code, report, message = execute(config)
    if report is None:
        return code, message
    return code, render(report, config.format)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="Seed (default 0)")
    parser.add_argument("--output", help="Write the report to this file instead of stdout")
    parser.add_argument("--format", choices=["json", "csv"], help="Report format (default json)")
    parser.add_argument("--tol", type=float, help="Relative solver tolerance")
    parser.add_argument("--max-iter", dest="max_iter", type=int, help="Solver iteration cap")
    parser.add_argument("--n", type=int, help="Dimension (default 2)")


def _add_ring(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r1", type=float, help="Inner radius")
    parser.add_argument("--r2", type=float, help="Outer radius")
    parser.add_argument("--center", type=_floats, help="Comma-separated center (default origin)")
    parser.add_argument("--curves", type=int, help="Curves in the ring family (default 720)")
    parser.add_argument("--subdiv", type=int, help="Vertices per curve (default 64)")
    parser.add_argument("--grid", type=int, help="Grid cells per axis")


def _add_map(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--map", help="Mapping name (default identity)")
    parser.add_argument("--alpha", type=float, help="Radial-stretch exponent (default 1)")


def _floats(text: str) -> List[float]:
    return [float(v) for v in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcmod", description="Numerical checks of modulus inequalities for ring mappings"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--threads", type=int, help="Worker cap (sets QCMOD_THREADS)")
    parser.add_argument("--archive", help="Append the run to this SQLite archive")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def sub(name: str, help_text: str) -> argparse.ArgumentParser:
        p = subparsers.add_parser(name, help=help_text, argument_default=argparse.SUPPRESS)
        _add_common(p)
        return p

    p = sub("modulus-ring", "Discrete vs analytic modulus of a ring family")
    _add_ring(p)

    for name, help_text in (
        ("verify-ring", "Ring inequality with a radial test density"),
        ("verify-general", "Modulus inequality with a grid density"),
    ):
        p = sub(name, help_text)
        _add_ring(p)
        _add_map(p)
        p.add_argument("--eta", choices=["step", "extremal"], help="Test density (default extremal)")

    p = sub("integrability", "L^p norm of the radial-stretch dilatation")
    p.add_argument("--alpha", type=float, help="Exponent alpha")
    p.add_argument("--p", type=float, help="Exponent p (default 1)")

    p = sub("weakflat", "Modulus of families crossing shrinking spheres")
    p.add_argument("--center", type=_floats, help="Point x0 (default origin)")
    p.add_argument("--eps0", type=float, help="Outer radius")
    p.add_argument("--P", type=float, help="Target lower bound")
    p.add_argument("--eps", type=float, help="Inner radius, instead of --P")
    p.add_argument("--c-n", dest="c_n", type=float, help="Constant of the logarithmic bound")
    p.add_argument("--per-halving", dest="per_halving", type=int, help="Curves per halving of scale")
    p.add_argument("--grid", type=int, help="Grid cells per axis")

    p = sub("recenter", "Recenter an annulus about a nearby point")
    p.add_argument("--center", type=_floats, help="Center x1 (default origin)")
    p.add_argument("--eps1", type=float, help="Inner radius")
    p.add_argument("--eps1-star", dest="eps1_star", type=float, help="Outer radius")
    p.add_argument("--q-l1", dest="q_l1", type=float, help="||Q||_1 for the recentered bound")
    p.add_argument("--compute-moduli", dest="compute_moduli", action="store_true")
    p.add_argument("--curves", type=int, help="Curves per ring family")
    p.add_argument("--subdiv", type=int, help="Vertices per curve")
    p.add_argument("--grid", type=int, help="Grid cells per axis")

    p = sub("cluster", "Oscillation of a mapping near a boundary point")
    _add_map(p)
    p.add_argument("--target", help="e1, e2, 0, inf or comma-separated coordinates")
    p.add_argument("--radii", help="Comma-separated radii or start:end (factor 10 steps)")
    p.add_argument("--dirs", type=int, help="Sample directions per sphere (default 64)")
    p.add_argument("--threshold", type=float, help="Oscillation cutoff for extension")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(asctime)s %(name)s %(levelname)s %(message)s"
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    verbosity = args.pop("verbose")
    threads = args.pop("threads")
    archive = args.pop("archive") or archive_path()
    _configure_logging(verbosity)
    if threads is not None:
        if threads < 1:
            print("error: --threads must be positive", file=sys.stderr)
            return EXIT_INVALID
        os.environ["QCMOD_THREADS"] = str(threads)

    try:
        config = RunConfig(**args)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "config"
        print(f"error: {where}: {first['msg']}", file=sys.stderr)
        return EXIT_INVALID

    code, report, message = execute(config)
    if message:
        print(message, file=sys.stderr)
    if report is not None:
        text = render(report, config.format)
        if config.output:
            with open(config.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    if archive:
        from .services import archive_run

        archive_run(config, report, code, db_path=archive)
    return code


if __name__ == "__main__":
    sys.exit(main())
