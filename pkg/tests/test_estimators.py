import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from lowpass_gsp import (
    BlindCommunityDetection,
    GraphSampler,
    HighPassDetector,
    SmoothLaplacianLearner,
)

from conftest import path_laplacian

ESTIMATORS = [
    GraphSampler(laplacian=path_laplacian(6), k=2, n_samples=3),
    BlindCommunityDetection(n_communities=2, restarts=3, random_state=1),
    SmoothLaplacianLearner(sigma=0.5, beta_reg=0.1),
    HighPassDetector(laplacian=path_laplacian(6), k=2, quantile=0.9),
]


@pytest.mark.parametrize("est", ESTIMATORS, ids=lambda e: type(e).__name__)
def test_params_round_trip_through_clone(est):
    params = est.get_params()
    twin = clone(est)
    for key, value in params.items():
        np.testing.assert_equal(twin.get_params()[key], value)
    assert twin.set_params(**params) is twin


@pytest.mark.parametrize("est", ESTIMATORS, ids=lambda e: type(e).__name__)
def test_fit_sets_n_features(est):
    X = np.random.default_rng(0).standard_normal((30, 6))
    fitted = clone(est).fit(X)
    assert fitted.n_features_in_ == 6


def test_unfitted_estimators_raise():
    with pytest.raises(NotFittedError):
        GraphSampler(laplacian=path_laplacian(4), k=1).transform(np.ones((1, 4)))
    with pytest.raises(NotFittedError):
        HighPassDetector(laplacian=path_laplacian(4)).predict(np.ones((1, 4)))
    with pytest.raises(NotFittedError):
        SmoothLaplacianLearner().edge_support()
