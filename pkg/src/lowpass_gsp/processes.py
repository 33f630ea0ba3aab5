"""Synthetic low-pass graph signals.

Observations follow ``y = H(L) x + w`` with white Gaussian excitation
``x`` and noise ``w``.  Random draws are made in column chunks, each chunk
with its own named sub-stream, so any column range can be generated
independently with bit-identical results.
"""
import numpy as np

from ._random import substream
from ._validation import check_laplacian, check_signal
from .errors import ValidationError
from .filters import frequency_response
from .spectral import eigendecompose

CHUNK = 256


def _standard_normal_columns(seed, name, rows, m):
    out = np.empty((rows, m))
    for c0 in range(0, m, CHUNK):
        width = min(CHUNK, m - c0)
        rng = substream(seed, name, c0 // CHUNK)
        # row-major fill: column c of the chunk is drawn before column c+1
        out[:, c0 : c0 + width] = rng.standard_normal((width, rows)).T
    return out


def sample_lowpass_signals(basis, spec, m, sigma, seed, mixing=None):
    """Draw ``m`` signals ``y = H(L) x + sigma w`` as columns of an n-by-m matrix.

    ``mixing`` is an optional n-by-r factor matrix B; the excitation is then
    ``B x`` with ``x`` white in ``R^r``.
    """
    if m < 1:
        raise ValidationError("m must be at least 1")
    if sigma < 0:
        raise ValidationError("sigma must be non-negative")
    n = basis.n
    h = frequency_response(spec, basis.lambdas)
    if mixing is None:
        X = _standard_normal_columns(seed, "excitation", n, m)
    else:
        B = np.asarray(mixing, dtype=float)
        if B.ndim != 2 or B.shape[0] != n:
            raise ValidationError(f"mixing matrix must have {n} rows")
        X = B @ _standard_normal_columns(seed, "excitation", B.shape[1], m)
    Y = basis.U @ (h[:, None] * (basis.U.T @ X))
    if sigma > 0:
        Y += sigma * _standard_normal_columns(seed, "noise", n, m)
    return Y


def covariance_model(basis, spec, sigma):
    """Population covariance ``U h(Lambda)^2 U^T + sigma^2 I``."""
    h = frequency_response(spec, basis.lambdas)
    C = basis.matrix(h**2) + sigma**2 * np.eye(basis.n)
    return 0.5 * (C + C.T)


def diffusion_snapshot(L, t_sigma, x0):
    """Heat diffusion ``exp(-t_sigma L) x0`` evaluated spectrally."""
    if t_sigma < 0:
        raise ValidationError("t_sigma must be non-negative")
    L = check_laplacian(L)
    x0 = check_signal(x0, L.shape[0], "x0")
    if t_sigma == 0:
        return x0.copy()
    basis = eigendecompose(L)
    X0 = x0.reshape(L.shape[0], -1)
    Y = basis.U @ (np.exp(-t_sigma * basis.lambdas)[:, None] * (basis.U.T @ X0))
    return Y.reshape(x0.shape)


def smoothness_expectation(basis, spec, sigma, k):
    """Approximate expected quadratic form of a k-low-pass signal.

    ``sum_{i<=k} lambda_i h(lambda_i)^2 + sigma^2 Tr(L)``; exact when the
    response vanishes above the k-th frequency.
    """
    if not 1 <= k <= basis.n:
        raise ValidationError(f"k must lie in [1, {basis.n}]")
    lam = basis.lambdas
    h = frequency_response(spec, lam)
    return float(np.sum(lam[:k] * h[:k] ** 2) + sigma**2 * np.sum(lam))
