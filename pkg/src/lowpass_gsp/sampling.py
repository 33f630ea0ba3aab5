"""Sampling sets and interpolation of bandlimited graph signals."""
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import as_float_array, check_signal
from .errors import SamplingError, ValidationError
from .spectral import eigendecompose


def _greedy_scores(Uk, selected, candidates):
    k = Uk.shape[1]
    rows = np.array(selected + [0], dtype=int)
    stack = np.repeat(Uk[rows][None, :, :], len(candidates), axis=0)
    stack[:, -1, :] = Uk[candidates]
    sv = np.linalg.svd(stack, compute_uv=False)
    if len(rows) < k:
        # sigma_min is identically zero below k rows; use the volume instead
        return np.prod(sv, axis=1)
    return sv[:, k - 1]


def greedy_select(Uk, ns):
    """Pick ``ns`` rows of ``Uk`` greedily maximising the smallest singular value.

    While fewer than ``k`` rows are selected the product of the singular
    values (the row volume) is maximised instead.  Ties go to the lowest
    index.
    """
    Uk = as_float_array(Uk, "Uk", ndim=2)
    n = Uk.shape[0]
    if not 1 <= ns <= n:
        raise ValidationError(f"ns must lie in [1, {n}], got {ns}")
    selected = []
    remaining = list(range(n))
    for _ in range(ns):
        scores = _greedy_scores(Uk, selected, remaining)
        best = scores.max()
        tie = scores >= best - 1e-12 * max(1.0, best)
        pick = remaining[int(np.flatnonzero(tie)[0])]
        selected.append(pick)
        remaining.remove(pick)
    return selected


def sampled_singular_values(indices, Uk):
    return np.linalg.svd(np.asarray(Uk)[list(indices)], compute_uv=False)


def verify_rank(indices, Uk):
    """True iff the sampled rows of ``Uk`` have full column rank ``k``."""
    Uk = np.asarray(Uk, dtype=float)
    n, k = Uk.shape
    indices = list(indices)
    if len(indices) < k:
        return False
    sv = sampled_singular_values(indices, Uk)
    return bool(sv[k - 1] > n * np.finfo(float).eps * sv[0])


@dataclass(frozen=True, eq=False)
class SamplingPlan:
    """Sampling set with its interpolation matrix ``psi`` (n-by-ns)."""

    indices: tuple
    k: int
    psi: np.ndarray

    @property
    def ns(self):
        return len(self.indices)

    @property
    def phi(self):
        """Row-selection matrix (ns-by-n)."""
        return np.eye(self.psi.shape[0])[list(self.indices)]

    def sample(self, y):
        return np.asarray(y, dtype=float)[list(self.indices)]

    def reconstruct(self, y_samp):
        return reconstruct(self, y_samp)

    def to_dict(self):
        return {"k": int(self.k), "indices": [int(i) for i in self.indices]}


def build_interpolator(Uk, indices):
    """Minimum-norm interpolator ``Uk (Phi Uk)^+`` for a rank-sufficient set."""
    Uk = as_float_array(Uk, "Uk", ndim=2)
    indices = [int(i) for i in indices]
    if len(set(indices)) != len(indices):
        raise ValidationError("sampling indices must be distinct")
    if not indices or min(indices) < 0 or max(indices) >= Uk.shape[0]:
        raise ValidationError("sampling indices out of range")
    k = Uk.shape[1]
    if not verify_rank(indices, Uk):
        sv = sampled_singular_values(indices, Uk)
        smin = float(sv[k - 1]) if len(sv) >= k else 0.0
        raise SamplingError(
            f"rank(Phi U_k) < k={k} with {len(indices)} samples (sigma_min={smin:.3g}); "
            "exact recovery needs rank(Phi U_k) = k",
            sigma_min=smin,
        )
    psi = Uk @ np.linalg.pinv(Uk[indices])
    psi.setflags(write=False)
    return SamplingPlan(tuple(indices), k, psi)


def reconstruct(plan, y_samp):
    """Interpolate ``psi @ y_samp`` (vector or ns-by-m matrix)."""
    y_samp = check_signal(y_samp, plan.ns, "sampled signal")
    return plan.psi @ y_samp


class GraphSampler(TransformerMixin, BaseEstimator):
    """Greedy node sampling with bandlimited interpolation.

    Follows the scikit-learn convention: ``X`` is ``(n_signals, n_nodes)``.
    ``transform`` keeps the sampled nodes and ``inverse_transform``
    interpolates back to all nodes.

    Parameters
    ----------
    laplacian : array of shape (n_nodes, n_nodes)
    k : int
        Bandwidth.
    n_samples : int, default=None
        Sampling budget; defaults to ``k``.
    """

    def __init__(self, laplacian=None, k=1, n_samples=None):
        self.laplacian = laplacian
        self.k = k
        self.n_samples = n_samples

    def fit(self, X=None, y=None):
        basis = eigendecompose(self.laplacian)
        Uk = basis.low(self.k)
        ns = self.k if self.n_samples is None else self.n_samples
        self.indices_ = np.array(greedy_select(Uk, ns))
        self.plan_ = build_interpolator(Uk, self.indices_)
        self.sigma_min_ = float(sampled_singular_values(self.indices_, Uk)[self.k - 1])
        self.n_features_in_ = basis.n
        return self

    def transform(self, X):
        check_is_fitted(self, "plan_")
        X = check_array(X)
        return X[:, self.indices_]

    def inverse_transform(self, X):
        check_is_fitted(self, "plan_")
        X = check_array(X)
        return X @ self.plan_.psi.T
