import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from lowpass_gsp import Graph, laplacian

settings.register_profile(
    "default", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# filled by tests/test_acceptance.py, reported after the run
ACCEPTANCE_RESULTS = {}


def random_weighted_graph(rng, n, p=0.4, connected=True):
    """Random weighted undirected graph; a path is added to keep it connected."""
    W = (rng.random((n, n)) < p) * rng.uniform(0.1, 2.0, (n, n))
    W = np.triu(W, 1)
    if connected:
        idx = rng.permutation(n)
        W[np.minimum(idx[:-1], idx[1:]), np.maximum(idx[:-1], idx[1:])] += 1.0
    W = W + W.T
    return Graph(W)


def path_laplacian(n):
    A = np.zeros((n, n))
    i = np.arange(n - 1)
    A[i, i + 1] = A[i + 1, i] = 1.0
    return laplacian(A)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
