#!/usr/bin/env python3
"""
Smoke test for the qcmod package

Verifies that the package is set up correctly by:
1. Importing the public API
2. Creating the run archive and its tables
3. Running the CLI end to end and archiving the run
4. Checking the closed-form values every report relies on
"""

import json
import logging
import math
import os
import sys
import tempfile

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def test_imports():
    """Test that all modules can be imported."""
    logger.info("Testing imports...")

    from qcmod import __version__, chordal_dist, discrete_modulus, ring_family  # noqa: F401
    from qcmod.cli import build_parser, main  # noqa: F401
    from qcmod.database import create_tables, init_archive_db, initialize_archive  # noqa: F401
    from qcmod.models import RunRecord  # noqa: F401
    from qcmod.schemas import ClusterProbe, RunConfig, VerificationReport  # noqa: F401
    from qcmod.services import archive_run, list_runs  # noqa: F401
    from qcmod.verify import cluster_probe, verify_ring_inequality  # noqa: F401

    assert __version__
    logger.info("✅ All imports successful")


def test_archive_init():
    """Test archive initialization."""
    logger.info("Testing archive initialization...")

    from qcmod.database import initialize_archive

    with tempfile.TemporaryDirectory() as tmp:
        db_path = os.path.join(tmp, "test-qcmod-runs.db")
        initialize_archive(db_path)
        assert os.path.exists(db_path), "Archive file not created"

    logger.info("✅ Archive initialization successful")


def test_cli_run_is_archived():
    """Test one CLI run from argument parsing to the archived record."""
    logger.info("Testing CLI run...")

    from qcmod.cli import main
    from qcmod.services import list_runs

    with tempfile.TemporaryDirectory() as tmp:
        db_path = os.path.join(tmp, "cli-runs.db")
        out_path = os.path.join(tmp, "report.json")
        code = main(["--archive", db_path, "integrability", "--alpha", "1", "--output", out_path])
        assert code == 0, f"CLI exited with {code}"

        with open(out_path, encoding="utf-8") as fh:
            report = json.load(fh)
        runs = list_runs(db_path)
        assert len(runs) == 1
        assert runs[0]["report"] == report
        logger.info(f"Archived run {runs[0]['id']}: {runs[0]['command']}")

    logger.info("✅ CLI test successful")


def test_closed_forms():
    """Test the analytic values reports are compared against."""
    logger.info("Testing closed forms...")

    from qcmod.geometry import ExtendedPoint, chordal_dist
    from qcmod.mappings import RadialStretch, lp_norm_Q
    from qcmod.modulus import analytic_ring_modulus

    assert chordal_dist([0.0, 0.0], ExtendedPoint.infinity(2)) == 1.0
    assert abs(analytic_ring_modulus(2, 1.0, math.e) - 2 * math.pi) < 1e-12
    assert abs(lp_norm_Q(RadialStretch(1.0, 2), 1).value - 3 * math.pi) < 1e-8

    logger.info("✅ Closed forms match")


def main():
    """Run all checks."""
    logger.info("=" * 60)
    logger.info("qcmod Package Smoke Test")
    logger.info("=" * 60)

    checks = [
        ("Imports", test_imports),
        ("Archive Init", test_archive_init),
        ("CLI Run", test_cli_run_is_archived),
        ("Closed Forms", test_closed_forms),
    ]
    results = []
    for name, check in checks:
        try:
            check()
            results.append((name, True))
        except Exception as e:
            logger.error(f"❌ {name} failed: {e}")
            results.append((name, False))

    logger.info("=" * 60)
    logger.info("Test Results Summary:")
    logger.info("=" * 60)
    for name, result in results:
        status = "✅ PASS" if result else "❌ FAIL"
        logger.info(f"{name}: {status}")

    all_passed = all(result for _, result in results)
    if all_passed:
        logger.info("🎉 All checks passed! Package is working correctly.")
    else:
        logger.error("❌ Some checks failed. Please check the errors above.")
    return all_passed


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
