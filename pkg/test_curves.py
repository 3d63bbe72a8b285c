import numpy as np
import pytest
from pydantic import ValidationError

from qcmod.curves import CurveFamily, Polyline, connecting_family, length, map_family, ring_family
from qcmod.exceptions import DimensionMismatchError, DomainError, GeometryError
from qcmod.geometry import Annulus, crosses_sphere
from qcmod.mappings import get_mapping


def test_polyline_validation():
    with pytest.raises(GeometryError):
        Polyline([[0.0, 0.0]])
    with pytest.raises(GeometryError):
        Polyline([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    p = Polyline.through([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    assert len(p) == 2


def test_length_and_refine_preserve_geometry():
    p = Polyline([[0.0, 0.0], [3.0, 0.0], [3.0, 4.0]])
    assert length(p) == pytest.approx(7.0)
    refined = p.refine(3)
    assert len(refined) == 2 * 4 + 1
    assert refined.length() == pytest.approx(7.0)
    assert np.array_equal(refined.vertices[0], p.vertices[0])
    assert np.array_equal(refined.vertices[-1], p.vertices[-1])
    assert p.reversed().length() == pytest.approx(7.0)
    assert p.subcurve(1, 3).length() == pytest.approx(4.0)
    assert p.dilated(2.0).length() == pytest.approx(14.0)


def test_family_dimension_mixing_rejected():
    with pytest.raises(DimensionMismatchError):
        CurveFamily(
            (Polyline([[0.0, 0.0], [1.0, 0.0]]), Polyline([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]))
        )


def test_family_dict_shape():
    fam = CurveFamily((Polyline([[0.0, 0.0], [1.0, 1.0]]),), "seg")
    data = fam.to_dict()
    assert data == {"label": "seg", "n": 2, "curves": [[[0.0, 0.0], [1.0, 1.0]]]}
    assert CurveFamily.from_dict(data).to_dict() == data
    assert CurveFamily.empty().to_dict()["n"] == 0
    with pytest.raises(ValidationError):
        CurveFamily.from_dict({"label": "bad", "n": 3, "curves": [[[0.0, 0.0], [1.0, 1.0]]]})


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ring_family_crosses_both_boundaries(n):
    a = Annulus.at(np.zeros(n), 0.5, 2.0)
    fam = ring_family(a, count=40, subdiv=8, seed=1)
    assert len(fam) == 40
    for curve in fam:
        r = np.linalg.norm(curve.vertices, axis=1)
        assert r[0] == pytest.approx(0.5)
        assert r[-1] == pytest.approx(2.0)
        assert np.all(np.diff(r) > 0)
        assert crosses_sphere(curve, np.zeros(n), 1.0)


def test_ring_family_rejects_bad_counts():
    a = Annulus.at([0.0, 0.0], 1.0, 2.0)
    with pytest.raises(GeometryError):
        ring_family(a, count=0, subdiv=4)
    with pytest.raises(GeometryError):
        ring_family(a, count=4, subdiv=1)


def test_connecting_family_endpoints_and_avoidance():
    E = [[-1.0, 0.0], [-1.0, 0.5]]
    F = [[1.0, 0.0], [1.0, 0.5]]
    ball = (np.array([0.0, 0.1]), 0.2)
    fam = connecting_family(E, F, exclude=[ball], count=12, seed=4)
    assert len(fam) == 12
    for curve in fam:
        assert any(np.allclose(curve.vertices[0], e) for e in E)
        assert any(np.allclose(curve.vertices[-1], f) for f in F)
        assert np.all(np.linalg.norm(curve.vertices - ball[0], axis=1) >= ball[1])


def test_connecting_family_is_deterministic_per_index():
    E = [[-1.0, 0.0]]
    F = [[1.0, 0.0]]
    small = connecting_family(E, F, count=3, seed=7)
    large = connecting_family(E, F, count=6, seed=7)
    for a, b in zip(small, large):
        assert np.array_equal(a.vertices, b.vertices)


def test_connecting_family_errors():
    with pytest.raises(GeometryError):
        connecting_family([[0.0, 0.0]], [[0.0, 0.0]])
    with pytest.raises(GeometryError):
        connecting_family([[0.0, 0.0]], [[1.0, 0.0]], exclude=[([0.0, 0.0], 0.5)])
    with pytest.raises(GeometryError):
        connecting_family([[0.0, 0.0]], [[1.0, 0.0]], pairing="nearest")


def test_map_family_reports_offending_vertex():
    radial = get_mapping("radial", 2, 1.0)
    fam = CurveFamily((Polyline([[0.2, 0.0], [0.5, 0.0]]), Polyline([[0.5, 0.0], [1.5, 0.0]])))
    with pytest.raises(DomainError) as info:
        map_family(radial, fam)
    assert info.value.curve_index == 1
    assert info.value.vertex_index == 1


def test_map_family_identity_is_noop():
    fam = ring_family(Annulus.at([0.0, 0.0], 1.0, 2.0), count=5, subdiv=4)
    image = map_family(get_mapping("identity", 2), fam)
    assert image.label == f"identity({fam.label})"
    for a, b in zip(fam, image):
        assert np.array_equal(a.vertices, b.vertices)


def test_map_family_radial_stretch_moves_ring_curves_outward():
    fam = ring_family(Annulus.at([0.0, 0.0], 0.25, 0.5), count=16, subdiv=8)
    image = map_family(get_mapping("radial-extended", 2, 1.0), fam)
    for source, curve in zip(fam, image):
        radii = np.linalg.norm(curve.vertices, axis=1)
        assert radii[0] == pytest.approx(1.25, abs=1e-12)
        assert radii[-1] == pytest.approx(1.5, abs=1e-12)
        before = source.vertices / np.linalg.norm(source.vertices, axis=1, keepdims=True)
        assert np.abs(curve.vertices / radii[:, None] - before).max() <= 1e-12
