"""High-frequency anomaly detection for low-pass graph signals.

Under the null hypothesis the signal is the output of a k-low-pass filter,
so its energy above the k-th graph frequency is small.  The detector
statistic is the l2 norm of the ideal high-pass output.
"""
import enum
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, OutlierMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import as_float_array, check_band, check_signal
from .errors import ValidationError
from .spectral import eigendecompose


class Hypothesis(str, enum.Enum):
    NULL = "A0"
    ANOMALY = "A1"


class InsufficientCalibrationError(ValidationError):
    pass


@dataclass(frozen=True)
class DetectionResult:
    statistic: float
    decision: Hypothesis
    threshold: float


def high_pass_component(basis, k, y):
    """``(I - U_k U_k^T) y`` computed from the high-band eigenvectors."""
    k = check_band(k, basis.n)
    y = check_signal(y, basis.n)
    Uh = basis.high(k)
    return Uh @ (Uh.T @ y)


def hpf_statistic(basis, k, y):
    """l2 norm of the high-band GFT coefficients (one value per column)."""
    k = check_band(k, basis.n)
    y = check_signal(y, basis.n)
    coeffs = basis.high(k).T @ y
    stat = np.linalg.norm(coeffs, axis=0)
    return float(stat) if y.ndim == 1 else stat


def calibrate_threshold(basis, k, Ytrain, quantile=0.95):
    """Empirical ``quantile`` of the statistic over anomaly-free columns."""
    Ytrain = as_float_array(Ytrain, "training signals", ndim=2)
    if not 0 < quantile <= 1:
        raise ValidationError("quantile must lie in (0, 1]")
    if Ytrain.shape[1] < 10:
        raise InsufficientCalibrationError(
            f"need at least 10 training signals to calibrate, got {Ytrain.shape[1]}"
        )
    stats = hpf_statistic(basis, k, Ytrain)
    return float(np.quantile(stats, quantile))


def detect(statistic, threshold):
    """Alarm iff ``statistic > threshold``; ties favour the null."""
    if threshold < 0:
        raise ValidationError("threshold must be non-negative")
    decision = Hypothesis.ANOMALY if statistic > threshold else Hypothesis.NULL
    return DetectionResult(float(statistic), decision, float(threshold))


def localize(basis, k, y, entry_threshold):
    """Nodes where the high-pass output exceeds ``entry_threshold`` in magnitude."""
    if entry_threshold < 0:
        raise ValidationError("entry_threshold must be non-negative")
    hp = high_pass_component(basis, k, np.asarray(y, dtype=float).reshape(-1))
    return np.flatnonzero(np.abs(hp) > entry_threshold)


def spatial_difference(L, y):
    """``L y = D y - A y``: each node minus the weighted sum of its neighbours."""
    L = as_float_array(L, "laplacian", ndim=2)
    y = check_signal(y, L.shape[0])
    return L @ y


class HighPassDetector(OutlierMixin, BaseEstimator):
    """Outlier detector built on the ideal high-pass statistic.

    ``X`` has shape ``(n_signals, n_nodes)``.  ``fit`` calibrates the
    threshold on anomaly-free signals; ``predict`` returns ``-1`` for
    anomalies and ``1`` otherwise, as scikit-learn outlier detectors do.

    Parameters
    ----------
    laplacian : array of shape (n_nodes, n_nodes)
    k : int
        Bandwidth of the low-pass null model.
    quantile : float, default=0.95
    """

    def __init__(self, laplacian=None, k=1, quantile=0.95):
        self.laplacian = laplacian
        self.k = k
        self.quantile = quantile

    def fit(self, X, y=None):
        X = check_array(X)
        self.basis_ = eigendecompose(self.laplacian)
        self.threshold_ = calibrate_threshold(self.basis_, self.k, X.T, self.quantile)
        self.n_features_in_ = X.shape[1]
        return self

    def score_samples(self, X):
        """High-pass statistic per signal (larger is more anomalous)."""
        check_is_fitted(self, "threshold_")
        X = check_array(X)
        return np.atleast_1d(hpf_statistic(self.basis_, self.k, X.T))

    def decision_function(self, X):
        scores = self.score_samples(X)
        return self.threshold_ - scores

    def predict(self, X):
        return np.where(self.decision_function(X) < 0, -1, 1)
