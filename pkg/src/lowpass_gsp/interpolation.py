"""Missing-entry recovery for time-vertex signals."""
import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from ._validation import as_float_array, check_laplacian
from .errors import NumericalError, UnderdeterminedError, ValidationError


def _temporal_smoothing(Y):
    # Y D^T D for the first-difference operator D along time
    out = np.zeros_like(Y)
    if Y.shape[1] > 1:
        d = np.diff(Y, axis=1)
        out[:, :-1] -= d
        out[:, 1:] += d
    return out


def time_vertex_objective(Y, Ysamp, mask, L, gamma):
    """``||M(Y) - Y_samp||_F^2 + gamma (sum_t y_t^T L y_t + sum_t ||y_t - y_{t-1}||^2)``."""
    fit = np.sum((mask * (Y - Ysamp)) ** 2)
    reg = np.sum(Y * (L @ Y)) + np.sum(np.diff(Y, axis=1) ** 2)
    return float(fit + gamma * reg)


def interpolate_time_vertex(Ysamp, mask, L, gamma, tol=1e-8, maxiter=None):
    """Fill unobserved entries of an n-by-T matrix using graph and time smoothness.

    The objective is a convex quadratic; its normal equations
    ``M(Y) + gamma (L Y + Y D^T D) = M(Y_samp)`` are solved by conjugate
    gradients from the zero-filled observations until the gradient norm
    is at most ``tol``.
    """
    L = check_laplacian(L)
    mask = np.asarray(mask).astype(bool)
    Ysamp = np.asarray(Ysamp, dtype=float)
    if Ysamp.ndim != 2 or mask.shape != Ysamp.shape:
        raise ValidationError(f"mask shape {mask.shape} does not match observations {Ysamp.shape}")
    # unobserved entries may hold anything, including NaN
    Ysamp = as_float_array(np.where(mask, np.nan_to_num(Ysamp), 0.0), "observations", ndim=2)
    n, T = Ysamp.shape
    if L.shape[0] != n:
        raise ValidationError(f"observations have {n} rows, graph has {L.shape[0]} nodes")
    if gamma < 0:
        raise ValidationError("gamma must be non-negative")
    if gamma == 0 and not mask.all():
        raise UnderdeterminedError("gamma = 0 leaves unobserved entries undetermined")
    if gamma == 0:
        return Ysamp.copy()
    M = mask.astype(float)

    def matvec(v):
        Y = v.reshape(n, T)
        return (M * Y + gamma * (L @ Y + _temporal_smoothing(Y))).ravel()

    op = LinearOperator((n * T, n * T), matvec=matvec, dtype=float)
    rhs = (M * Ysamp).ravel()
    # gradient = 2 (A y - b)
    sol, info = cg(op, rhs, x0=rhs.copy(), rtol=0.0, atol=tol / 2.0, maxiter=maxiter or 20 * n * T)
    Y = sol.reshape(n, T)
    if info > 0:
        grad = 2 * np.linalg.norm(matvec(sol) - rhs)
        if grad > tol:
            raise NumericalError(f"conjugate gradients stopped with gradient norm {grad:.3g} > tol")
    return Y
