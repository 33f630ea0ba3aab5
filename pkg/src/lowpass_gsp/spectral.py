"""Laplacian eigenbasis, graph Fourier transform and smoothness."""
from dataclasses import dataclass

import numpy as np

from ._validation import as_float_array, check_signal, check_symmetric
from .errors import ValidationError


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Orthonormal eigenvectors ``U`` (columns) with ascending ``lambdas``."""

    U: np.ndarray
    lambdas: np.ndarray

    def __post_init__(self):
        for arr in (self.U, self.lambdas):
            arr.setflags(write=False)

    @property
    def n(self):
        return self.lambdas.shape[0]

    def low(self, k):
        """Bottom-k eigenvectors ``U_k``."""
        return self.U[:, :k]

    def high(self, k):
        """Eigenvectors ``k+1 .. n``."""
        return self.U[:, k:]

    def projector(self, k):
        Uk = self.low(k)
        return Uk @ Uk.T

    def matrix(self, response):
        """Dense operator ``U diag(response) U^T``."""
        return (self.U * np.asarray(response, dtype=float)) @ self.U.T

    def gft(self, x):
        return gft(self, x)

    def igft(self, xt):
        return igft(self, xt)


def _fix_signs(U):
    idx = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[idx, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    return U * signs


def eigendecompose(L):
    """Eigendecomposition of a symmetric GSO, eigenvalues ascending.

    Each eigenvector is signed so that its largest-magnitude entry is
    positive.  The all-zero matrix gets the identity basis.
    """
    L = check_symmetric(L, "laplacian")
    n = L.shape[0]
    if not np.any(L):
        return SpectralBasis(np.eye(n), np.zeros(n))
    lambdas, U = np.linalg.eigh(0.5 * (L + L.T))
    order = np.argsort(lambdas, kind="stable")
    return SpectralBasis(_fix_signs(U[:, order]), lambdas[order])


def gft(basis, x):
    """Graph Fourier transform ``U^T x`` (columns of a matrix transform independently)."""
    x = check_signal(x, basis.n)
    return basis.U.T @ x


def igft(basis, xt):
    xt = check_signal(xt, basis.n, "frequency vector")
    return basis.U @ xt


def quadratic_form(L, x):
    """Graph quadratic form ``x^T L x`` (per column for matrix input)."""
    L = as_float_array(L, "laplacian", ndim=2)
    x = check_signal(x, L.shape[0])
    q = np.einsum("i...,i...->...", x, L @ x)
    return float(q) if x.ndim == 1 else q


def quadratic_form_edges(A, x):
    """Edge-sum form ``sum_{i<j} A_ij (x_i - x_j)^2``; equals ``x^T L x``."""
    A = as_float_array(A, "adjacency", ndim=2)
    x = check_signal(x, A.shape[0])
    iu, ju = np.triu_indices(A.shape[0], k=1)
    diff = x[iu] - x[ju]
    w = A[iu, ju]
    if diff.ndim == 1:
        return float(np.sum(w * diff**2))
    return np.sum(w[:, None] * diff**2, axis=0)


def check_basis(basis, tol=1e-8):
    """Raise if ``basis`` is not orthonormal with ascending eigenvalues."""
    U, lam = basis.U, basis.lambdas
    if np.max(np.abs(U.T @ U - np.eye(basis.n))) > tol:
        raise ValidationError("basis is not orthonormal")
    if np.any(np.diff(lam) < -tol):
        raise ValidationError("eigenvalues are not ascending")
