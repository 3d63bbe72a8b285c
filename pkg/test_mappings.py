import math
from typing import get_args

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcmod.exceptions import DomainError, GeometryError
from qcmod.geometry import Annulus, sphere_points
from qcmod.mappings import (
    MAPPINGS,
    Q_radial,
    RadialStretch,
    get_mapping,
    integrability_threshold,
    lp_norm_Q,
    radial_forward,
    radial_inverse,
)
from qcmod.schemas.config import MappingName

radius = st.floats(min_value=0.01, max_value=0.99)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.9])
def test_round_trip_on_random_points(alpha):
    m = RadialStretch(alpha, 2)
    rng = np.random.default_rng(11)
    directions = rng.standard_normal((10_000, 2))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    pts = directions * rng.uniform(0.01, 0.99, size=(10_000, 1))
    image = radial_forward(pts, m)
    assert np.all((np.linalg.norm(image, axis=1) > 1.0) & (np.linalg.norm(image, axis=1) < 2.0))
    assert np.abs(radial_inverse(image, m) - pts).max() <= 1e-12


@given(radius, st.sampled_from([0.5, 1.0, 1.9]), st.integers(min_value=2, max_value=4))
def test_round_trip_along_an_axis(r, alpha, n):
    m = RadialStretch(alpha, n)
    x = np.zeros(n)
    x[0] = r
    y = radial_forward(x, m)
    assert np.linalg.norm(y) == pytest.approx(1.0 + r ** alpha)
    assert np.allclose(radial_inverse(y, m), x, rtol=0.0, atol=1e-12)


def test_punctures_correspond():
    m = RadialStretch(1.0, 2)
    assert m.e2.tolist() == [0.0, 1.5]
    assert radial_forward(m.e1, m, include_puncture=True) == pytest.approx(m.e2)
    assert RadialStretch(2.0, 3).e2.tolist() == [0.0, 0.0, 1.25]


def test_domain_errors():
    m = RadialStretch(1.0, 2)
    with pytest.raises(DomainError):
        radial_forward([0.0, 0.0], m)
    with pytest.raises(DomainError):
        radial_forward([1.0, 0.0], m)
    with pytest.raises(DomainError):
        radial_forward(m.e1, m)
    with pytest.raises(DomainError):
        radial_inverse([0.5, 0.0], m)
    with pytest.raises(DomainError):
        radial_inverse(m.e2, m)
    with pytest.raises(DomainError):
        radial_forward([0.1, 0.1, 0.1], m)
    with pytest.raises(GeometryError):
        RadialStretch(0.0, 2)


def test_dilatation_values():
    assert Q_radial(0.5, RadialStretch(1.0, 2)) == pytest.approx(3.0)
    assert Q_radial(0.5, RadialStretch(1.0, 3)) == pytest.approx(9.0)
    q = Q_radial(np.array([0.25, 0.5]), RadialStretch(2.0, 2))
    assert q.tolist() == pytest.approx([(1 + 1 / 16) / (2 / 16), (1 + 1 / 4) / (2 / 4)])
    assert np.all(Q_radial(np.linspace(0.01, 0.99, 50), RadialStretch(0.7, 4)) >= 1.0)
    with pytest.raises(DomainError):
        Q_radial(1.0, RadialStretch(1.0, 2))


def test_integrability_threshold():
    assert integrability_threshold(2, 1) == 2.0
    assert integrability_threshold(2, 2) == 1.0
    assert integrability_threshold(3, 1) == pytest.approx(1.5)


def test_l1_norm_closed_form():
    result = lp_norm_Q(RadialStretch(1.0, 2), 1)
    assert result.finite and not result.divergent
    assert result.threshold == 2.0
    assert result.value == pytest.approx(3 * math.pi, rel=1e-9)


def test_l2_norm_on_both_sides_of_the_threshold():
    below = lp_norm_Q(RadialStretch(0.9, 2), 2)
    assert below.finite
    assert below.value is not None and math.isfinite(below.value) and below.value > 0
    above = lp_norm_Q(RadialStretch(1.1, 2), 2)
    assert above.divergent and not above.finite
    assert above.value is None


def test_lp_norm_rejects_small_p():
    with pytest.raises(ValueError):
        lp_norm_Q(RadialStretch(1.0, 2), 0.5)


def test_registry_matches_config_names():
    assert set(MAPPINGS) == set(get_args(MappingName))
    with pytest.raises(KeyError):
        get_mapping("mobius")


def test_mapping_handles():
    f = get_mapping("radial", 2, 1.0)
    assert f([0.5, 0.0]).tolist() == pytest.approx([1.5, 0.0])
    assert f.params == {"alpha": 1.0}
    assert f.dilatation(0.5) == pytest.approx(3.0)
    with pytest.raises(DomainError):
        f([0.0, 0.5])
    extended = get_mapping("radial-extended", 2, 1.0)
    assert extended([0.0, 0.5]).tolist() == pytest.approx([0.0, 1.5])
    g = get_mapping("radial-inverse", 2, 1.0)
    assert g.dilatation is None
    assert g([0.0, 1.75]).tolist() == pytest.approx([0.0, 0.75])
    identity = get_mapping("identity", 3)
    assert identity([1.0, 2.0, 3.0]).tolist() == [1.0, 2.0, 3.0]
    assert identity.dilatation(0.3) == 1.0
    assert identity.to_dict() == {"name": "identity", "n": 3, "params": {}}


def test_image_annulus():
    m = RadialStretch(1.0, 2)
    image = m.image_annulus(Annulus.at([0.0, 0.0], 0.1, 0.5))
    assert (image.r1, image.r2) == pytest.approx((1.1, 1.5))
    with pytest.raises(GeometryError):
        m.image_annulus(Annulus.at([0.1, 0.0], 0.1, 0.5))
    with pytest.raises(GeometryError):
        m.image_annulus(Annulus.at([0.0, 0.0], 0.5, 2.0))


@pytest.mark.parametrize("n", [2, 3])
def test_annuli_map_onto_annuli(n):
    m = RadialStretch(0.7, n)
    extended = get_mapping("radial-extended", n, 0.7)
    for r in (0.2, 0.6):
        sphere = sphere_points(np.zeros(n), r, 360)
        radii = np.linalg.norm(extended(sphere), axis=1)
        assert np.abs(radii - (1.0 + r ** m.alpha)).max() <= 1e-12


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("alpha", [0.3, 1.0, 1.9])
def test_dilatation_decreases_with_radius(alpha, n):
    q = Q_radial(np.linspace(0.01, 0.99, 200), RadialStretch(alpha, n))
    assert np.all(np.diff(q) < 0.0)


def test_l2_norm_is_stable_under_subdivision_doubling():
    m = RadialStretch(0.9, 2)
    coarse = lp_norm_Q(m, 2, subdivisions=8)
    fine = lp_norm_Q(m, 2, subdivisions=16)
    assert fine.value == pytest.approx(coarse.value, rel=1e-8)
