import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lowpass_gsp import (
    BlockModel,
    Diffusion,
    HighPassDetector,
    Hypothesis,
    IdealLowPass,
    Resolvent,
    ValidationError,
    calibrate_threshold,
    detect,
    eigendecompose,
    frequency_response,
    hpf_statistic,
    laplacian,
    localize,
    low_pass_ratio,
    sample_lowpass_signals,
    sbm_ppm_sample,
    spatial_difference,
)
from lowpass_gsp.anomaly import InsufficientCalibrationError, high_pass_component

from conftest import random_weighted_graph


@pytest.fixture
def basis():
    return eigendecompose(laplacian(random_weighted_graph(np.random.default_rng(2), 15)))


def test_statistic_is_norm_of_projector_complement(basis, rng):
    y = rng.standard_normal(15)
    P = np.eye(15) - basis.projector(3)
    assert hpf_statistic(basis, 3, y) == pytest.approx(np.linalg.norm(P @ y), rel=1e-12)
    np.testing.assert_allclose(high_pass_component(basis, 3, y), P @ y, atol=1e-12)
    Y = rng.standard_normal((15, 4))
    np.testing.assert_allclose(hpf_statistic(basis, 3, Y), np.linalg.norm(P @ Y, axis=0), rtol=1e-12)


def test_calibration_is_empirical_quantile(basis, rng):
    Y = rng.standard_normal((15, 50))
    stats = hpf_statistic(basis, 3, Y)
    assert calibrate_threshold(basis, 3, Y, 0.9) == pytest.approx(np.quantile(stats, 0.9))
    assert calibrate_threshold(basis, 3, Y, 1.0) == pytest.approx(stats.max())
    with pytest.raises(InsufficientCalibrationError):
        calibrate_threshold(basis, 3, Y[:, :9])
    with pytest.raises(ValidationError):
        calibrate_threshold(basis, 3, Y, 0.0)


def test_tie_favours_null():
    assert detect(1.0, 1.0).decision is Hypothesis.NULL
    assert detect(1.0 + 1e-12, 1.0).decision is Hypothesis.ANOMALY
    assert Hypothesis.ANOMALY.value == "A1"
    with pytest.raises(ValidationError):
        detect(1.0, -1.0)


@given(st.integers(0, 2**31 - 1), st.floats(0.1, 3.0))
def test_operator_norm_bound(seed, t):
    # Gamma <= max_{i>k} |h(lambda_i)| * ||x|| for any excitation x
    rng = np.random.default_rng(seed)
    b = eigendecompose(laplacian(random_weighted_graph(rng, 12)))
    x = rng.standard_normal(12)
    h = frequency_response(Diffusion(t), b.lambdas)
    y = b.matrix(h) @ x
    for k in (1, 3, 6):
        assert hpf_statistic(b, k, y) <= np.max(np.abs(h[k:])) * np.linalg.norm(x) * (1 + 1e-12) + 1e-15


@given(st.integers(0, 2**31 - 1), st.floats(0.1, 3.0))
def test_ratio_bound_with_low_band_energy(seed, t):
    # Gamma / ||y|| <= eta_k ||x|| / ||x_low||
    rng = np.random.default_rng(seed)
    b = eigendecompose(laplacian(random_weighted_graph(rng, 12)))
    x = rng.standard_normal(12)
    h = frequency_response(Resolvent(t), b.lambdas)
    y = b.matrix(h) @ x
    k = 3
    bound = low_pass_ratio(h, k) * np.linalg.norm(x) / np.linalg.norm(b.low(k).T @ x)
    assert hpf_statistic(b, k, y) / np.linalg.norm(y) <= bound * (1 + 1e-10)


def test_ratio_not_bounded_by_eta_without_low_band_energy(basis):
    # an excitation on the top eigenvector passes only high-band energy
    h = frequency_response(Diffusion(0.5), basis.lambdas)
    y = basis.matrix(h) @ basis.U[:, -1]
    assert hpf_statistic(basis, 3, y) / np.linalg.norm(y) == pytest.approx(1.0)
    assert low_pass_ratio(h, 3) < 1.0


def test_ideal_low_pass_null_has_zero_statistic(basis):
    Y = sample_lowpass_signals(basis, IdealLowPass(3), 20, 0.0, 0)
    assert np.max(hpf_statistic(basis, 3, Y)) < 1e-12


def test_localize_single_spike():
    model = BlockModel(60, 3, 0.5, 0.05)
    b = eigendecompose(laplacian(sbm_ppm_sample(model, 0)))
    y = sample_lowpass_signals(b, Diffusion(1.0), 1, 0.0, 0)[:, 0]
    y[17] += 1.0
    np.testing.assert_array_equal(localize(b, 3, y, 0.5), [17])
    with pytest.raises(ValidationError):
        localize(b, 3, y, -1.0)


def test_spatial_difference(rng):
    g = random_weighted_graph(rng, 7)
    y = rng.standard_normal(7)
    np.testing.assert_allclose(spatial_difference(laplacian(g), y), g.degrees * y - g.weights @ y)
    np.testing.assert_allclose(spatial_difference(laplacian(g), np.ones(7)), 0.0, atol=1e-12)


def test_high_pass_detector_estimator():
    model = BlockModel(40, 2, 0.5, 0.05)
    L = laplacian(sbm_ppm_sample(model, 0))
    b = eigendecompose(L)
    train = sample_lowpass_signals(b, Diffusion(1.0), 200, 0.05, 0).T
    test = sample_lowpass_signals(b, Diffusion(1.0), 20, 0.05, 1).T
    test[10:, 5] += 2.0
    det = HighPassDetector(laplacian=L, k=2, quantile=0.99).fit(train)
    pred = det.predict(test)
    assert set(pred) <= {-1, 1}
    assert np.all(pred[10:] == -1)
    np.testing.assert_allclose(det.decision_function(test), det.threshold_ - det.score_samples(test))
