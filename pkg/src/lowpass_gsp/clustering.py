"""k-means, spectral clustering and blind community detection."""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from ._random import substream
from ._validation import as_float_array
from .errors import ValidationError
from .spectral import eigendecompose


@dataclass(frozen=True, eq=False)
class CommunityAssignment:
    """Node labels (0-based) and the k-means cost ``F`` (root of the SSE)."""

    labels: np.ndarray
    objective: float
    centers: np.ndarray = None

    @property
    def k(self):
        return int(self.labels.max()) + 1 if self.labels.size else 0


def sample_covariance(Y, center=False):
    """``Y Y^T / m`` for an n-by-m signal matrix (no centering by default)."""
    Y = as_float_array(Y, "signals", ndim=2)
    if Y.shape[1] < 1:
        raise ValidationError("need at least one signal")
    if center:
        Y = Y - Y.mean(axis=1, keepdims=True)
    C = Y @ Y.T / Y.shape[1]
    return 0.5 * (C + C.T)


def kmeans_objective(rows, labels):
    """``sqrt(sum_q sum_{i in q} ||row_i - mean_q||^2)``."""
    rows = np.asarray(rows, dtype=float)
    labels = np.asarray(labels)
    sse = 0.0
    for q in np.unique(labels):
        pts = rows[labels == q]
        sse += float(np.sum((pts - pts.mean(axis=0)) ** 2))
    return float(np.sqrt(sse))


def _canonical(labels):
    # relabel clusters in order of first appearance
    _, first = np.unique(labels, return_index=True)
    mapping = np.empty(labels.max() + 1, dtype=int)
    mapping[labels[np.sort(first)]] = np.arange(first.size)
    return mapping[labels]


def _sq_dists(X, C):
    d = (X**2).sum(axis=1)[:, None] - 2 * X @ C.T + (C**2).sum(axis=1)[None, :]
    return np.maximum(d, 0.0)


def _plusplus(X, k, rng):
    n = X.shape[0]
    idx = [int(rng.integers(n))]
    d2 = _sq_dists(X, X[idx])[:, 0]
    for _ in range(1, k):
        total = d2.sum()
        if total <= 0:
            pool = np.setdiff1d(np.arange(n), idx)
            nxt = int(rng.choice(pool))
        else:
            nxt = int(rng.choice(n, p=d2 / total))
        idx.append(nxt)
        d2 = np.minimum(d2, _sq_dists(X, X[[nxt]])[:, 0])
    return X[idx].copy()


def _lloyd(X, centers, max_iter):
    k = centers.shape[0]
    labels = None
    for _ in range(max_iter):
        d = _sq_dists(X, centers)
        new = np.argmin(d, axis=1)
        counts = np.bincount(new, minlength=k)
        for j in np.flatnonzero(counts == 0):
            # empty cluster: move the point farthest from its own centre
            own = d[np.arange(X.shape[0]), new]
            own[counts[new] <= 1] = -1.0
            far = int(np.argmax(own))
            counts[new[far]] -= 1
            new[far] = j
            counts[j] = 1
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        centers = np.array([X[labels == j].mean(axis=0) for j in range(k)])
    return labels, centers


def kmeans(rows, k, restarts=10, seed=0, max_iter=300):
    """Lloyd's algorithm from k-means++ seeds, best of ``restarts`` runs.

    Restart ``r`` uses its own sub-stream of ``seed``, so the result for
    ``restarts=R`` is the best of the first ``R`` runs of any larger ``R``.
    """
    X = as_float_array(rows, "rows", ndim=2)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise ValidationError(f"k must lie in [1, {n}], got {k}")
    if restarts < 1:
        raise ValidationError("restarts must be at least 1")
    best = None
    for r in range(restarts):
        rng = substream(seed, "kmeans", r)
        labels, centers = _lloyd(X, _plusplus(X, k, rng), max_iter)
        F = kmeans_objective(X, labels)
        if best is None or F < best[0]:
            best = (F, labels, centers)
    F, labels, centers = best
    canon = _canonical(labels)
    order = np.array([labels[np.flatnonzero(canon == j)[0]] for j in range(k)])
    return CommunityAssignment(canon, F, centers[order])


def spectral_clustering(L, k, restarts=10, seed=0):
    """k-means on the rows of the bottom-k Laplacian eigenvectors."""
    basis = eigendecompose(L)
    return kmeans(basis.low(k), k, restarts, seed)


def top_eigenvectors(C, k):
    """Eigenvectors of the ``k`` largest eigenvalues, descending."""
    vals, vecs = np.linalg.eigh(C)
    return vecs[:, ::-1][:, :k], vals[::-1][:k]


def blind_cd(Y, k, restarts=10, seed=0, center=False):
    """Community detection from signals alone.

    k-means on the rows of the top-k eigenvectors of the sample covariance.
    """
    C = sample_covariance(Y, center=center)
    Uk, _ = top_eigenvectors(C, k)
    return kmeans(Uk, k, restarts, seed)


def permutation_accuracy(labels_true, labels_pred):
    """Agreement fraction maximised over label permutations (Hungarian)."""
    t = np.asarray(labels_true)
    p = np.asarray(labels_pred)
    if t.shape != p.shape:
        raise ValidationError("label vectors differ in length")
    _, ti = np.unique(t, return_inverse=True)
    _, pi = np.unique(p, return_inverse=True)
    conf = np.zeros((ti.max() + 1, pi.max() + 1))
    np.add.at(conf, (ti, pi), 1)
    r, c = linear_sum_assignment(-conf)
    return float(conf[r, c].sum() / t.size)


class BlindCommunityDetection(BaseEstimator):
    """Cluster graph nodes from observed signals without the graph.

    ``X`` has shape ``(n_signals, n_nodes)``; ``labels_`` has one entry per
    node (column of ``X``), in the manner of feature agglomeration.

    Parameters
    ----------
    n_communities : int
    restarts : int, default=10
    random_state : int, default=0
    center : bool, default=False
        Subtract the per-node mean before forming the covariance.
    """

    def __init__(self, n_communities=2, restarts=10, random_state=0, center=False):
        self.n_communities = n_communities
        self.restarts = restarts
        self.random_state = random_state
        self.center = center

    def fit(self, X, y=None):
        X = check_array(X)
        self.covariance_ = sample_covariance(X.T, center=self.center)
        self.embedding_, self.eigenvalues_ = top_eigenvectors(self.covariance_, self.n_communities)
        result = kmeans(self.embedding_, self.n_communities, self.restarts, self.random_state)
        self.labels_ = result.labels
        self.objective_ = result.objective
        self.n_features_in_ = X.shape[1]
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_

    def score(self, X, y):
        """Permutation-matched accuracy of ``labels_`` against node labels ``y``."""
        check_is_fitted(self, "labels_")
        return permutation_accuracy(y, self.labels_)
