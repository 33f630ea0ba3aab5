import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lowpass_gsp import BlockModel, Graph, ValidationError, erdos_renyi_sample, expected_laplacian_sbm, laplacian, sbm_ppm_sample

from conftest import path_laplacian, random_weighted_graph


def test_path_laplacian_entries():
    L = path_laplacian(3)
    np.testing.assert_array_equal(L, [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])


@pytest.mark.parametrize(
    "W, msg",
    [
        ([[0, 1], [0, 0]], "symmetric"),
        ([[0, -1], [-1, 0]], "negative"),
        ([[1, 1], [1, 0]], "self-loop"),
    ],
)
def test_graph_rejects_bad_adjacency(W, msg):
    with pytest.raises(ValidationError, match=msg):
        Graph(np.array(W, dtype=float))


def test_graph_is_read_only():
    g = Graph(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(ValueError):
        g.weights[0, 1] = 2.0


@given(st.integers(2, 15), st.integers(0, 2**31 - 1))
def test_laplacian_invariants(n, seed):
    g = random_weighted_graph(np.random.default_rng(seed), n)
    L = laplacian(g)
    np.testing.assert_allclose(L.sum(axis=1), 0.0, atol=1e-12)
    np.testing.assert_array_equal(L, L.T)
    off = L[~np.eye(n, dtype=bool)]
    assert np.all(off <= 0)
    assert np.linalg.eigvalsh(L)[0] > -1e-10


def test_block_model_validation():
    with pytest.raises(ValidationError, match="divisible"):
        BlockModel(10, 3, 0.3, 0.1)
    with pytest.raises(ValidationError, match="exceeds 1"):
        BlockModel(10, 2, 0.8, 0.3)
    with pytest.raises(ValidationError):
        BlockModel(10, 2, -0.1, 0.3)


def test_block_model_membership_contiguous():
    m = BlockModel(6, 3, 0.5, 0.1)
    np.testing.assert_array_equal(m.membership, [0, 0, 1, 1, 2, 2])
    P = m.edge_probabilities
    assert P[0, 1] == pytest.approx(0.6)
    assert P[0, 2] == pytest.approx(0.1)
    assert np.all(np.diag(P) == 0)


def test_sbm_sample_structure_and_determinism():
    model = BlockModel(60, 3, 0.4, 0.1)
    g1 = sbm_ppm_sample(model, 7)
    g2 = sbm_ppm_sample(model, 7)
    g3 = sbm_ppm_sample(model, 8)
    assert g1 == g2
    assert not g1 == g3
    W = g1.weights
    assert set(np.unique(W)) <= {0.0, 1.0}
    assert np.all(np.diag(W) == 0)


def test_sbm_edge_densities_monte_carlo():
    # empirical densities against a + b and b; binomial standard error < 0.005
    model = BlockModel(400, 4, 0.3, 0.05)
    W = sbm_ppm_sample(model, 0).weights
    same = model.membership[:, None] == model.membership[None, :]
    iu = np.triu_indices(400, 1)
    within = W[iu][same[iu]].mean()
    across = W[iu][~same[iu]].mean()
    assert within == pytest.approx(0.35, abs=0.02)
    assert across == pytest.approx(0.05, abs=0.01)


def test_erdos_renyi_density():
    W = erdos_renyi_sample(300, 0.2, 3).weights
    assert W[np.triu_indices(300, 1)].mean() == pytest.approx(0.2, abs=0.01)
    with pytest.raises(ValidationError):
        erdos_renyi_sample(5, 1.5, 0)


@pytest.mark.parametrize("n,k,a,b", [(12, 3, 0.5, 0.1), (20, 4, 0.45, 0.05), (9, 1, 0.2, 0.3)])
def test_expected_laplacian_matches_probability_graph(n, k, a, b):
    model = BlockModel(n, k, a, b)
    oracle = laplacian(Graph(model.edge_probabilities))
    np.testing.assert_allclose(expected_laplacian_sbm(model), oracle, atol=1e-12)


def test_expected_laplacian_spectrum():
    n, k, a, b = 20, 4, 0.45, 0.05
    lam = np.linalg.eigvalsh(expected_laplacian_sbm(BlockModel(n, k, a, b)))
    expected = np.r_[0.0, [n * b] * (k - 1), [n * (a + k * b) / k] * (n - k)]
    np.testing.assert_allclose(lam, expected, atol=1e-10)
