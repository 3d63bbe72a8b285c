import os

import hypothesis
import numpy as np
import pytest

np.seterr(all="warn")

hypothesis.settings.register_profile("default", deadline=None, max_examples=50)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=5)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size runs with the acceptance grid sizes")


@pytest.fixture
def unit_ring():
    from qcmod.geometry import Annulus

    return Annulus.at([0.0, 0.0], 1.0, np.e)


@pytest.fixture
def small_grid_for():
    """Fit a modest grid to a family."""
    from qcmod.modulus import Grid

    def make(fam, resolution=64):
        return Grid.fit(fam.all_vertices, resolution)

    return make


@pytest.fixture
def archive_file(tmp_path, monkeypatch):
    path = str(tmp_path / "runs.db")
    monkeypatch.setenv("QCMOD_ARCHIVE_PATH", path)
    return path
