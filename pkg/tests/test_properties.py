import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwsearch.graphs import (
    cartesian_power,
    complete_graph,
    kolmogorov_measure,
    path_graph,
    probabilistic_laplacian,
)
from qwsearch.search import evolve, success_curve
from qwsearch.spectral import (
    SearchHamiltonian,
    decompose,
    overlaps_direct,
    overlaps_via_green,
    symmetrize,
    theorem_bound_report,
)

st_p = st.floats(min_value=0.02, max_value=0.98)
st_gamma = st.floats(min_value=0.2, max_value=2.0)


def assert_graph_invariants(g, lap, measure):
    P = g.transition_matrix()
    np.testing.assert_allclose(P.sum(axis=1), 1.0, atol=1e-10)
    np.testing.assert_allclose(lap.matrix.sum(axis=1), 0.0, atol=1e-10)
    weighted = measure.mu[:, None] * lap.matrix
    assert np.abs(weighted - weighted.T).max() < 1e-10 * max(np.abs(weighted).max(), 1.0)
    for (x, y), w in g.weights.items():
        assert measure.mu[x] * w == pytest.approx(
            measure.mu[y] * g.weights[(y, x)], rel=1e-10
        )
    evals = np.linalg.eigvalsh(symmetrize(lap).matrix)
    assert evals[0] > -1e-10
    assert evals[-1] < 2.0 + 1e-10


@settings(max_examples=40, deadline=None)
@given(p=st_p)
def test_path_invariants(p):
    g = path_graph(p)
    lap = probabilistic_laplacian(g)
    assert_graph_invariants(g, lap, lap.measure)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(min_value=2, max_value=40))
def test_complete_invariants(n):
    g = complete_graph(n)
    lap = probabilistic_laplacian(g)
    assert_graph_invariants(g, lap, lap.measure)
    np.testing.assert_allclose(kolmogorov_measure(g).mu, 1.0, atol=0)


@settings(max_examples=15, deadline=None)
@given(p=st_p, d=st.integers(min_value=1, max_value=3))
def test_product_invariants(p, d):
    g, lap, measure = cartesian_power(path_graph(p), d)
    assert_graph_invariants(g, lap, measure)
    axis = kolmogorov_measure(path_graph(p))
    assert measure.volume == pytest.approx(axis.volume**d, rel=1e-12)


@settings(max_examples=10, deadline=None)
@given(p=st_p)
def test_product_spectrum_is_minkowski_average(p):
    axis_sym = symmetrize(probabilistic_laplacian(path_graph(p)))
    axis_evals = np.linalg.eigvalsh(axis_sym.matrix)
    _, lap, _ = cartesian_power(path_graph(p), 2)
    evals = np.sort(np.linalg.eigvalsh(symmetrize(lap).matrix))
    pairs = np.sort([(a + b) / 2.0 for a in axis_evals for b in axis_evals])
    np.testing.assert_allclose(evals, pairs, atol=1e-9)


@settings(max_examples=20, deadline=None)
@given(p=st_p, gamma=st_gamma, t=st.floats(min_value=0.0, max_value=25.0))
def test_evolution_unitary_and_bounded(p, gamma, t):
    lap = probabilistic_laplacian(path_graph(p))
    h = SearchHamiltonian(gamma, 0, lap)
    result = evolve(h, t)
    norm = float(np.sum(np.abs(result.state) ** 2 * lap.measure.mu))
    assert norm == pytest.approx(1.0, abs=1e-10)
    assert -1e-12 <= result.success <= 1.0 + 1e-12


@settings(max_examples=20, deadline=None)
@given(p=st_p, gamma=st_gamma)
def test_initial_success_is_measure_ratio(p, gamma):
    _, lap, measure = cartesian_power(path_graph(p), 2)
    h = SearchHamiltonian(gamma, 0, lap)
    assert evolve(h, 0.0).success == pytest.approx(
        measure.mu[0] / measure.volume, abs=1e-12
    )


@settings(max_examples=20, deadline=None)
@given(p=st_p, gamma=st_gamma, w=st.integers(min_value=0, max_value=3))
def test_green_matches_direct_and_ground_energy_negative(p, gamma, w):
    lap = probabilistic_laplacian(path_graph(p))
    h = SearchHamiltonian(gamma, w, lap)
    direct = overlaps_direct(h)
    via = overlaps_via_green(h)
    for name in ("e0", "e1", "s_psi0", "w_psi0", "s_psi1", "w_psi1"):
        assert getattr(direct, name) == pytest.approx(getattr(via, name), abs=1e-8)
    assert direct.e0 < 0.0


@settings(max_examples=20, deadline=None)
@given(p=st_p, gamma=st_gamma)
def test_theorem_bounds_always_hold(p, gamma):
    _, lap, _ = cartesian_power(path_graph(p), 2)
    bounds = theorem_bound_report(SearchHamiltonian(gamma, 0, lap))
    assert bounds.first_holds
    assert bounds.second_holds


@settings(max_examples=15, deadline=None)
@given(p=st_p, gamma=st_gamma)
def test_success_curve_matches_pointwise_evolution(p, gamma):
    lap = probabilistic_laplacian(path_graph(p))
    h = SearchHamiltonian(gamma, 1, lap)
    sd = decompose(h)
    times = np.linspace(0.0, 12.0, 7)
    curve = success_curve(h, times, spectral=sd)
    for t, pi in zip(times, curve):
        assert pi == pytest.approx(evolve(h, float(t), spectral=sd).success, abs=1e-12)
