import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcmod.curves import CurveFamily, Polyline, connecting_family, ring_family
from qcmod.exceptions import DivergentIntegralError, GeometryError, GridError, InadmissibleDensityError
from qcmod.geometry import Annulus
from qcmod.modulus import (
    ExtremalDensity,
    Grid,
    GridDensity,
    StepDensity,
    TabulatedDensity,
    adaptive_integral,
    admissible_eta,
    analytic_ring_modulus,
    discrete_modulus,
    eq4_bound,
    eta_integral,
    rhs_integral,
    solve_modulus,
    sphere_area,
    weak_flat_lower_bound,
    weak_flat_radius,
)
from qcmod.modulus.solver import merge_duplicate_rows
from qcmod.settings import RESIDUAL_SLACK

SOLVER_TOL = 1e-3


@pytest.fixture(scope="module")
def small_ring():
    return ring_family(Annulus.at([0.0, 0.0], 1.0, math.e), count=48, subdiv=16)


@pytest.fixture(scope="module")
def small_grid(small_ring):
    return Grid.fit(small_ring.all_vertices, 40)


@pytest.fixture(scope="module")
def small_solution(small_ring, small_grid):
    return solve_modulus(small_ring, small_grid, tol=SOLVER_TOL)


def test_sphere_area():
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(3) == pytest.approx(4 * math.pi)


def test_analytic_ring_modulus():
    assert analytic_ring_modulus(2, 1.0, math.e) == pytest.approx(2 * math.pi)
    assert analytic_ring_modulus(3, 1.0, 2.0) == pytest.approx(4 * math.pi / math.log(2.0) ** 2)
    with pytest.raises(GeometryError):
        analytic_ring_modulus(2, 2.0, 1.0)


def test_grid_validation():
    with pytest.raises(GridError):
        Grid((0.0, 0.0), (1.0, 1.0), 4)
    with pytest.raises(GridError):
        Grid((0.0, 0.0), (0.0, 1.0), 16)


def test_grid_geometry():
    grid = Grid((0.0, 0.0), (2.0, 2.0), 8)
    assert grid.cell_volume == pytest.approx(1.0 / 16.0)
    assert grid.shape == (8, 8)
    assert grid.cell_centers()[0, 0].tolist() == pytest.approx([0.125, 0.125])
    assert grid.contains(np.array([[0.0, 2.0]]))
    assert not grid.contains(np.array([[2.5, 1.0]]))


@given(
    st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=4, max_size=4),
)
def test_clip_segment_lengths_sum_to_segment(coords):
    grid = Grid((0.0, 0.0), (1.0, 1.0), 16)
    p0, p1 = np.array(coords[:2]), np.array(coords[2:])
    cells, lengths = grid.clip_segment(p0, p1)
    assert lengths.sum() == pytest.approx(np.linalg.norm(p1 - p0), abs=1e-12)
    assert np.all(lengths >= 0.0)
    assert np.all((cells >= 0) & (cells < grid.size))


def test_curve_matrix_rows_are_curve_lengths(small_ring, small_grid):
    L = small_grid.curve_matrix(small_ring)
    assert L.shape == (len(small_ring), small_grid.size)
    lengths = np.array([c.length() for c in small_ring])
    assert np.allclose(np.asarray(L.sum(axis=1)).ravel(), lengths)


def test_curve_matrix_rejects_curves_outside(small_grid):
    outside = CurveFamily((Polyline([[0.0, 0.0], [10.0, 0.0]]),))
    with pytest.raises(GridError):
        small_grid.curve_matrix(outside)


def test_curve_matrix_is_independent_of_threads(small_ring, small_grid):
    one = small_grid.curve_matrix(small_ring, threads=1)
    many = small_grid.curve_matrix(small_ring, threads=4)
    assert (one != many).nnz == 0


def test_merge_duplicate_rows(small_ring, small_grid):
    L = small_grid.curve_matrix(small_ring.duplicated())
    assert merge_duplicate_rows(L).shape[0] == len(small_ring)


def test_radial_test_densities():
    assert admissible_eta(StepDensity(0.25, 0.5)).admissible
    assert admissible_eta(ExtremalDensity(1.0, math.e)).integral == pytest.approx(1.0)
    half = TabulatedDensity([1.0, 2.0], [0.5, 0.5])
    assert eta_integral(half) == pytest.approx(0.5)
    assert not admissible_eta(half).admissible
    with pytest.raises(InadmissibleDensityError):
        StepDensity(0.5, 0.25)
    with pytest.raises(InadmissibleDensityError):
        TabulatedDensity([1.0, 1.0], [1.0, 1.0])


def test_rhs_integral_extremal_equality_case():
    a = Annulus.at([0.0, 0.0], 1.0, math.e)
    assert rhs_integral(lambda r: 1.0, ExtremalDensity(1.0, math.e), a, 2) == pytest.approx(
        2 * math.pi, rel=1e-9
    )


def test_rhs_integral_radial_stretch_step():
    # Q(r) = (1 + r)/r for alpha = 1, n = 2; closed form 11*pi
    a = Annulus.at([0.0, 0.0], 0.25, 0.5)
    value = rhs_integral(lambda r: (1.0 + r) / r, StepDensity(0.25, 0.5), a, 2)
    assert value == pytest.approx(11 * math.pi, abs=1e-6)


def test_rhs_integral_zero_dilatation():
    a = Annulus.at([0.0, 0.0], 1.0, 2.0)
    assert rhs_integral(lambda r: 0.0, StepDensity(1.0, 2.0), a, 2) == 0.0


def test_adaptive_integral_flags_nonfinite_values():
    with pytest.raises(DivergentIntegralError) as info:
        adaptive_integral(lambda t: math.inf, 0.0, 1.0)
    assert info.value.partial_values
    assert adaptive_integral(lambda t: t, 0.0, 2.0) == pytest.approx(2.0)
    assert adaptive_integral(lambda t: t, 1.0, 1.0) == 0.0


def test_bounds():
    assert eq4_bound(3 * math.pi, 0.25, 0.5, 2) == pytest.approx(48 * math.pi)
    with pytest.raises(GeometryError):
        eq4_bound(1.0, 0.5, 0.25, 2)
    eps = weak_flat_radius(1.0, 0.5, 2.0)
    assert eps < 0.5
    assert weak_flat_lower_bound(1.0, 0.5, eps) > 2.0


def test_weak_flat_radius_small_P_approaches_eps0():
    assert weak_flat_radius(1.0, 0.5, 1e-9) == pytest.approx(0.5, rel=1e-8)


def test_empty_family_has_zero_modulus(small_grid):
    estimate = discrete_modulus(CurveFamily.empty(), small_grid)
    assert estimate.value == 0.0
    assert estimate.converged


def test_solution_is_certified(small_ring, small_solution):
    estimate, density = small_solution.estimate, small_solution.density
    assert estimate.converged
    assert estimate.residual <= RESIDUAL_SLACK
    assert np.all(density.line_integrals(small_ring) >= 1.0 - RESIDUAL_SLACK)
    assert density.energy(2) == pytest.approx(estimate.value, rel=1e-9)
    assert 0.0 < estimate.lower_bound <= estimate.value


def test_solver_beats_uniform_density(small_ring, small_grid, small_solution):
    uniform = GridDensity.constant(small_grid, 1.0)
    touched = small_grid.curve_matrix(small_ring).sum(axis=0).A1 > 0
    restricted = GridDensity(small_grid, np.where(touched.reshape(small_grid.shape), 1.0, 0.0))
    assert small_solution.estimate.value <= restricted.normalized_for(small_ring).energy(2)
    assert uniform.energy(2) > 0


def test_duplication_invariance(small_ring, small_grid, small_solution):
    doubled = discrete_modulus(small_ring.duplicated(), small_grid, tol=SOLVER_TOL)
    assert doubled.value == pytest.approx(small_solution.estimate.value, rel=1e-12)


def test_subfamily_monotonicity(small_ring, small_grid, small_solution):
    sub = discrete_modulus(small_ring.subfamily(range(0, 48, 3)), small_grid, tol=SOLVER_TOL)
    assert sub.value <= small_solution.estimate.value * (1 + 2 * SOLVER_TOL)


def test_determinism(small_ring, small_grid, small_solution):
    again = discrete_modulus(small_ring, small_grid, tol=SOLVER_TOL)
    assert again == small_solution.estimate


def test_conformal_invariance_under_dilation(small_ring, small_grid, small_solution):
    scaled = discrete_modulus(small_ring.dilated(3.0), small_grid.dilated(3.0), tol=SOLVER_TOL)
    assert scaled.value == pytest.approx(small_solution.estimate.value, rel=3 * SOLVER_TOL)


@settings(max_examples=5, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_connecting_families_are_certified(seed):
    fam = connecting_family(
        [[-1.0, y] for y in np.linspace(-0.5, 0.5, 5)],
        [[1.0, y] for y in np.linspace(-0.5, 0.5, 5)],
        count=30,
        seed=seed,
    )
    grid = Grid.fit(fam.all_vertices, 32)
    solution = solve_modulus(fam, grid, tol=SOLVER_TOL)
    assert solution.estimate.residual <= RESIDUAL_SLACK
    assert np.all(solution.density.line_integrals(fam) >= 1.0 - RESIDUAL_SLACK)
    sub = discrete_modulus(fam.subfamily(range(10)), grid, tol=SOLVER_TOL)
    assert sub.value <= solution.estimate.value * (1 + 2 * SOLVER_TOL)


def test_grid_density_helpers(small_ring, small_grid):
    eta = ExtremalDensity(1.0, math.e)
    rho = GridDensity.from_radial(small_grid, eta, [0.0, 0.0], support=(1.0, math.e))
    normalized = rho.normalized_for(small_ring)
    assert normalized.line_integrals(small_ring).min() == pytest.approx(1.0)
    ones = GridDensity.constant(small_grid, 1.0)
    assert normalized.weighted_energy(ones, 2) == pytest.approx(normalized.energy(2))
    other = GridDensity.constant(small_grid.dilated(2.0), 1.0)
    with pytest.raises(GridError):
        normalized.weighted_energy(other, 2)
    with pytest.raises(GridError):
        GridDensity.constant(small_grid, -1.0)


@pytest.mark.slow
def test_ring_modulus_oracle():
    fam = ring_family(Annulus.at([0.0, 0.0], 1.0, math.e), count=720, subdiv=64)
    grid = Grid.fit(fam.all_vertices, 256)
    estimate = discrete_modulus(fam, grid)
    assert estimate.converged
    assert estimate.value == pytest.approx(2 * math.pi, rel=0.05)


@pytest.mark.parametrize(
    "integrand",
    [lambda t: 1.0 / t, lambda t: 1.0 / abs(t - 0.3), lambda t: (t - 0.3) ** -2],
)
def test_adaptive_integral_flags_divergent_integrands(integrand):
    with pytest.raises(DivergentIntegralError):
        adaptive_integral(integrand, 0.0, 1.0)


def test_adaptive_integral_handles_integrable_singularities():
    assert adaptive_integral(lambda t: t ** -0.5, 0.0, 1.0) == pytest.approx(2.0, rel=1e-8)
    assert adaptive_integral(lambda t: abs(t - 0.3) ** -0.5, 0.0, 1.0, points=[0.3]) == pytest.approx(
        2.0 * (math.sqrt(0.3) + math.sqrt(0.7)), rel=1e-8
    )


@pytest.mark.parametrize("power", [1.0, 2.0])
def test_rhs_integral_reports_divergence(power):
    a = Annulus.at([0.0, 0.0], 0.25, 0.5)
    with pytest.raises(DivergentIntegralError):
        rhs_integral(lambda r: abs(r - 0.3) ** -power, StepDensity(0.25, 0.5), a, 2)


def test_minorization_by_vertex_subranges(small_ring, small_grid, small_solution):
    shorter = CurveFamily(tuple(c.subcurve(3, len(c) - 3) for c in small_ring), label="inner")
    inner = discrete_modulus(shorter, small_grid, tol=SOLVER_TOL)
    assert small_solution.estimate.value <= inner.value * (1 + 2 * SOLVER_TOL)
    assert inner.value > small_solution.estimate.value
