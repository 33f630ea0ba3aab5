import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize

from lowpass_gsp import (
    Resolvent,
    SmoothLaplacianLearner,
    ValidationError,
    eigendecompose,
    erdos_renyi_sample,
    laplacian,
    learn_topology,
    sample_lowpass_signals,
)
from lowpass_gsp.topology import _l_step, edge_f1, edge_support, laplacian_from_weights, project_simplex


@given(
    st.lists(st.floats(-10, 10), min_size=1, max_size=30),
    st.floats(0.1, 20.0),
)
def test_simplex_projection_kkt(v, total):
    v = np.array(v)
    w = project_simplex(v, total)
    assert np.all(w >= 0)
    assert w.sum() == pytest.approx(total, rel=1e-10)
    # KKT: v - w equals a common shift on the support and is at least it elsewhere
    theta = (v - w)[w > 0]
    assert np.ptp(theta) < 1e-9 * max(1.0, np.abs(v).max())
    assert np.all(v[w == 0] <= theta[0] + 1e-9 * max(1.0, np.abs(v).max()))


def test_simplex_projection_is_nearest_point(rng):
    v = rng.standard_normal(6)
    w = project_simplex(v, 2.0)
    for _ in range(200):
        u = project_simplex(rng.standard_normal(6), 2.0)
        assert np.linalg.norm(v - w) <= np.linalg.norm(v - u) + 1e-12


def test_laplacian_from_weights_constraints(rng):
    n = 6
    w = project_simplex(rng.random(15), n / 2)
    L = laplacian_from_weights(w, n)
    np.testing.assert_allclose(L.sum(axis=1), 0.0, atol=1e-12)
    assert np.trace(L) == pytest.approx(n)
    assert np.all(L[~np.eye(n, dtype=bool)] <= 0)


def test_l_step_matches_generic_solver(rng):
    n = 5
    E = n * (n - 1) // 2
    c = rng.random(E)
    beta = 0.3

    def f(w):
        L = laplacian_from_weights(w, n)
        return c @ w + beta * np.sum(L**2)

    w = _l_step(c, np.full(E, n / 2 / E), n, beta)
    ref = minimize(
        f, np.full(E, n / 2 / E), method="SLSQP", bounds=[(0, None)] * E,
        constraints=[{"type": "eq", "fun": lambda w: w.sum() - n / 2}], options={"ftol": 1e-14, "maxiter": 500},
    )
    assert f(w) <= ref.fun + 1e-9
    np.testing.assert_allclose(w, ref.x, atol=1e-5)


def _smooth_data(seed, n=12, m=400):
    g = erdos_renyi_sample(n, 0.3, seed)
    b = eigendecompose(laplacian(g))
    return g, sample_lowpass_signals(b, Resolvent(1.0), m, 0.1, seed)


def test_every_iterate_feasible_and_objective_nonincreasing():
    _, Y = _smooth_data(0)
    full = learn_topology(Y, 0.1, 0.05, max_iter=15, tol=0.0)
    h = np.array(full.history)
    assert np.all(np.diff(h) <= 1e-12 * np.abs(h[:-1]))
    n = Y.shape[0]
    for t in range(1, full.n_iter + 1):
        # the run is deterministic, so max_iter=t reproduces iterate t
        L = learn_topology(Y, 0.1, 0.05, max_iter=t, tol=0.0).values
        assert abs(np.trace(L) - n) <= 1e-9
        assert np.max(np.abs(L - L.T)) <= 1e-12
        assert np.max(L[~np.eye(n, dtype=bool)]) <= 0.0
        assert np.max(np.abs(L.sum(axis=1))) <= 1e-9


def test_learned_graph_recovers_edges():
    g, Y = _smooth_data(1, n=15, m=1000)
    res = learn_topology(Y, 0.1, 0.015)
    assert edge_f1(edge_support(res.values), g.weights) >= 0.7


def test_zero_regularisation_warns_and_is_sparse():
    _, Y = _smooth_data(2)
    with pytest.warns(RuntimeWarning, match="degenerate"):
        res = learn_topology(Y, 0.1, 0.0, max_iter=3)
    assert np.count_nonzero(res.weights) == 1


def test_input_validation():
    Y = np.ones((4, 10))
    with pytest.raises(ValidationError):
        learn_topology(Y, 0.0)
    with pytest.raises(ValidationError):
        learn_topology(Y, 1.0, beta_reg=-1)
    with pytest.raises(ValidationError):
        learn_topology(np.ones((1, 10)), 1.0)


def test_edge_f1_definition():
    truth = np.array([[0, 1, 1], [1, 0, 0], [1, 0, 0]])
    est = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    # one true positive, precision 1/2, recall 1/2
    assert edge_f1(est, truth) == pytest.approx(0.5)
    assert edge_f1(np.zeros((3, 3)), truth) == 0.0
    assert not edge_support(np.zeros((3, 3))).any()


def test_smooth_laplacian_learner_estimator():
    g, Y = _smooth_data(3, n=10, m=500)
    est = SmoothLaplacianLearner(sigma=0.1, beta_reg=0.02).fit(Y.T)
    assert est.laplacian_.shape == (10, 10)
    assert 0.0 <= est.score(Y.T, g.weights) <= 1.0
    assert est.history_.ndim == 1
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        SmoothLaplacianLearner(sigma=0.1, beta_reg=0.02, max_iter=2).fit(Y.T)


def test_constant_signals_cost_nothing():
    Y = np.tile(np.linspace(-1, 1, 30), (6, 1))
    res = learn_topology(Y, 0.5, 0.1, max_iter=5)
    Z = Y  # constant columns are fixed points of the denoising step
    assert np.sum(Z * (res.values @ Z)) <= 1e-8
    assert np.trace(res.values) == pytest.approx(6)


def test_two_nodes_feasible_set_is_a_point():
    res = learn_topology(np.random.default_rng(0).standard_normal((2, 20)), 0.3, 0.1)
    np.testing.assert_array_equal(res.values, [[1.0, -1.0], [-1.0, 1.0]])
