"""Input validation helpers shared by the functional API and estimators."""
import numpy as np

from .errors import ValidationError

SYMMETRY_TOL = 1e-10


def as_float_array(a, name="array", ndim=None):
    arr = np.asarray(a, dtype=float)
    if ndim is not None and arr.ndim not in np.atleast_1d(ndim):
        raise ValidationError(f"{name} must have ndim in {ndim}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def check_square(a, name="matrix"):
    arr = as_float_array(a, name, ndim=2)
    if arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValidationError(f"{name} must have at least one row")
    return arr


def check_symmetric(a, name="matrix", tol=SYMMETRY_TOL):
    arr = check_square(a, name)
    scale = max(1.0, float(np.max(np.abs(arr))))
    if np.max(np.abs(arr - arr.T)) > tol * scale:
        raise ValidationError(f"{name} is not symmetric")
    return arr


def check_laplacian(L, name="laplacian", tol=1e-9):
    """Validate a combinatorial Laplacian and return it as a float array."""
    L = check_symmetric(L, name)
    scale = max(1.0, float(np.max(np.abs(L))))
    off = L - np.diag(np.diag(L))
    if np.max(off) > tol * scale:
        raise ValidationError(f"{name} has positive off-diagonal entries")
    if np.max(np.abs(L.sum(axis=1))) > tol * scale * L.shape[0]:
        raise ValidationError(f"{name} rows do not sum to zero")
    return L


def check_signal(x, n, name="signal"):
    """Accept a length-n vector or an n-by-m matrix of column signals."""
    x = as_float_array(x, name, ndim=(1, 2))
    if x.shape[0] != n:
        raise ValidationError(f"{name} has {x.shape[0]} rows, expected {n}")
    return x


def check_band(k, n, name="k"):
    if not (1 <= int(k) <= n - 1) or int(k) != k:
        raise ValidationError(f"{name} must be an integer in [1, {n - 1}], got {k}")
    return int(k)
