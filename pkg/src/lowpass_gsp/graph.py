"""Undirected weighted graphs, their Laplacians and random graph models."""
from dataclasses import dataclass, field

import numpy as np

from ._random import substream
from ._validation import check_square
from .errors import ValidationError


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected graph stored as a dense symmetric weight matrix.

    Weights must be non-negative with a zero diagonal (no self-loops).
    """

    weights: np.ndarray

    def __post_init__(self):
        W = check_square(self.weights, "adjacency")
        if np.max(np.abs(W - W.T)) > 1e-12 * max(1.0, float(np.max(np.abs(W)))):
            raise ValidationError("adjacency is not symmetric")
        if np.any(W < 0):
            raise ValidationError("adjacency has negative weights")
        if np.any(np.diag(W) != 0):
            raise ValidationError("adjacency has self-loops (nonzero diagonal)")
        W = 0.5 * (W + W.T)
        W.setflags(write=False)
        object.__setattr__(self, "weights", W)

    @property
    def n(self):
        return self.weights.shape[0]

    @property
    def degrees(self):
        return self.weights.sum(axis=1)

    def laplacian(self):
        return laplacian(self)

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.weights, other.weights)

    __hash__ = None


@dataclass(frozen=True)
class BlockModel:
    """Homogeneous planted partition model with ``k`` equal blocks.

    Nodes in the same block connect with probability ``a + b``; nodes in
    different blocks with probability ``b``.  Block ``j`` holds the
    contiguous nodes ``j*n/k .. (j+1)*n/k - 1``.
    """

    n: int
    k: int
    a: float
    b: float
    membership: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValidationError("n and k must be positive")
        if self.n % self.k:
            raise ValidationError(f"n={self.n} is not divisible by k={self.k}; blocks must be equal-sized")
        if self.a < 0 or self.b < 0:
            raise ValidationError("a and b must be non-negative")
        if self.a + self.b > 1:
            raise ValidationError(f"a + b = {self.a + self.b} exceeds 1; not a probability")
        labels = np.repeat(np.arange(self.k), self.n // self.k)
        labels.setflags(write=False)
        object.__setattr__(self, "membership", labels)

    @property
    def membership_matrix(self):
        """Binary n-by-k indicator matrix Z."""
        return np.eye(self.k)[self.membership]

    @property
    def edge_probabilities(self):
        same = self.membership[:, None] == self.membership[None, :]
        P = np.where(same, self.a + self.b, self.b)
        np.fill_diagonal(P, 0.0)
        return P


def laplacian(g):
    """Combinatorial Laplacian ``D - A`` of a graph (or raw adjacency)."""
    if not isinstance(g, Graph):
        g = Graph(np.asarray(g, dtype=float))
    W = g.weights
    return np.diag(W.sum(axis=1)) - W


def _symmetric_bernoulli(P, rng):
    n = P.shape[0]
    draws = rng.random((n, n)) < P
    upper = np.triu(draws, k=1)
    return (upper | upper.T).astype(float)


def sbm_ppm_sample(model, seed):
    """Draw a binary adjacency from the planted partition model."""
    rng = substream(seed, "graph")
    return Graph(_symmetric_bernoulli(model.edge_probabilities, rng))


def erdos_renyi_sample(n, p, seed):
    """Draw a G(n, p) graph."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p must lie in [0, 1], got {p}")
    rng = substream(seed, "graph")
    P = np.full((n, n), float(p))
    return Graph(_symmetric_bernoulli(P, rng))


def expected_laplacian_sbm(model):
    """Limit Laplacian of the planted partition model.

    Returns ``n(a + k b)/k * I - Z (b 11^T + a I) Z^T``; its spectrum is 0,
    ``n b`` (multiplicity k-1) and ``n(a + k b)/k`` (multiplicity n-k), so
    the gap after the k-th eigenvalue is ``n a / k``.
    """
    n, k, a, b = model.n, model.k, model.a, model.b
    Z = model.membership_matrix
    B = b * np.ones((k, k)) + a * np.eye(k)
    return (n * (a + k * b) / k) * np.eye(n) - Z @ B @ Z.T
