import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lowpass_gsp import UnderdeterminedError, ValidationError, interpolate_time_vertex, laplacian
from lowpass_gsp.interpolation import time_vertex_objective

from conftest import random_weighted_graph


def _dense_solution(Ysamp, mask, L, gamma):
    # normal equations as one Kronecker-structured linear system
    n, T = Ysamp.shape
    D = np.diff(np.eye(T), axis=0)
    A = np.diag(mask.ravel().astype(float)) + gamma * (np.kron(L, np.eye(T)) + np.kron(np.eye(n), D.T @ D))
    return np.linalg.solve(A, (mask * Ysamp).ravel()).reshape(n, T)


@given(st.integers(2, 6), st.integers(2, 8), st.floats(0.01, 10.0), st.integers(0, 2**31 - 1))
def test_matches_dense_solve(n, T, gamma, seed):
    rng = np.random.default_rng(seed)
    L = laplacian(random_weighted_graph(rng, n))
    Y = rng.standard_normal((n, T))
    mask = rng.random((n, T)) < 0.6
    mask[0, 0] = True
    got = interpolate_time_vertex(np.where(mask, Y, 0.0), mask, L, gamma, tol=1e-12)
    np.testing.assert_allclose(got, _dense_solution(Y, mask, L, gamma), atol=1e-9)


def test_solution_minimises_objective(rng):
    L = laplacian(random_weighted_graph(rng, 5))
    Y = rng.standard_normal((5, 6))
    mask = rng.random((5, 6)) < 0.5
    Yh = interpolate_time_vertex(Y, mask, L, 0.5, tol=1e-12)
    f0 = time_vertex_objective(Yh, Y, mask, L, 0.5)
    for _ in range(50):
        assert time_vertex_objective(Yh + 1e-3 * rng.standard_normal(Yh.shape), Y, mask, L, 0.5) >= f0


def test_full_mask_and_zero_gamma_is_identity(rng):
    L = laplacian(random_weighted_graph(rng, 4))
    Y = rng.standard_normal((4, 5))
    np.testing.assert_array_equal(interpolate_time_vertex(Y, np.ones_like(Y, bool), L, 0.0), Y)


def test_constant_truth_recovered_exactly(rng):
    L = laplacian(random_weighted_graph(rng, 8))
    Y = np.full((8, 20), 2.5)
    mask = rng.random(Y.shape) < 0.3
    Yh = interpolate_time_vertex(np.where(mask, Y, np.nan), mask, L, 1.0, tol=1e-12)
    np.testing.assert_allclose(Yh, Y, atol=1e-9)


def test_zero_gamma_with_missing_entries_is_underdetermined(rng):
    L = laplacian(random_weighted_graph(rng, 3))
    mask = np.ones((3, 4), bool)
    mask[1, 2] = False
    with pytest.raises(UnderdeterminedError):
        interpolate_time_vertex(np.zeros((3, 4)), mask, L, 0.0)


def test_shape_validation(rng):
    L = laplacian(random_weighted_graph(rng, 3))
    with pytest.raises(ValidationError):
        interpolate_time_vertex(np.zeros((3, 4)), np.ones((3, 5), bool), L, 1.0)
    with pytest.raises(ValidationError):
        interpolate_time_vertex(np.zeros((4, 4)), np.ones((4, 4), bool), L, 1.0)
    with pytest.raises(ValidationError):
        interpolate_time_vertex(np.zeros((3, 4)), np.ones((3, 4), bool), L, -1.0)
