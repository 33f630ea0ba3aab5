"""Graph-temporal filters: GF-ARMA recursions and joint transfer functions."""
import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import as_float_array, check_band, check_laplacian
from .errors import InstabilityError, SingularityError, ValidationError
from .filters import Polynomial, filter_from_dict, frequency_response
from .spectral import eigendecompose


@dataclass(frozen=True)
class GfArmaSpec:
    """GF-ARMA(q, r) filter.

    ``y_t = sum_{s=1..q} ar[s-1](L) y_{t-s} + sum_{s=0..r} ma[s](L) x_{t-s}``.
    If ``lambdas`` is given the recursion is checked for stability there.
    """

    ar: tuple = ()
    ma: tuple = ()
    lambdas: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ar", tuple(filter_from_dict(f) for f in self.ar))
        object.__setattr__(self, "ma", tuple(filter_from_dict(f) for f in self.ma))
        if not self.ma:
            raise ValidationError("GF-ARMA needs at least one moving-average tap")
        if self.lambdas is not None:
            self.check_stability(self.lambdas)

    @property
    def q(self):
        return len(self.ar)

    @property
    def r(self):
        return len(self.ma) - 1

    def tap_responses(self, lambdas):
        """Arrays ``(a, b)`` of shape ``(q, n)`` and ``(r+1, n)``."""
        lam = np.asarray(lambdas, dtype=float)
        a = np.array([frequency_response(f, lam) for f in self.ar]).reshape(self.q, lam.size)
        b = np.array([frequency_response(f, lam) for f in self.ma]).reshape(self.r + 1, lam.size)
        return a, b

    def poles(self, lambdas):
        """Roots of ``z^q - sum_s a_s z^{q-s}`` per frequency, shape ``(n, q)``."""
        a, _ = self.tap_responses(lambdas)
        lam = np.atleast_1d(lambdas)
        if self.q == 0:
            return np.zeros((lam.size, 0), dtype=complex)
        return np.array([np.roots(np.concatenate(([1.0], -a[:, i]))) for i in range(lam.size)])

    def check_stability(self, lambdas):
        poles = self.poles(lambdas)
        if poles.size and np.max(np.abs(poles)) >= 1.0:
            raise InstabilityError(
                f"GF-ARMA recursion is unstable: pole modulus {np.max(np.abs(poles)):.6g} >= 1"
            )

    def to_dict(self):
        return {"ar": [f.to_dict() for f in self.ar], "ma": [f.to_dict() for f in self.ma]}


def opinion_dynamics_spec(alpha, beta, lambdas=None):
    """GF-AR(1) ``y_t = (1-beta)(I - alpha L) y_{t-1} + beta x_t``.

    This is the opinion recursion ``y_{t+1} = (1-beta)(I - alpha L) y_t + beta x_t``
    re-indexed so the input enters without delay; its transfer function is
    ``beta / (1 - (1-beta)(1 - alpha lambda) z^-1)``.
    """
    ar = (Polynomial((1.0 - beta, -(1.0 - beta) * alpha)),)
    ma = (Polynomial((beta,)),)
    return GfArmaSpec(ar, ma, lambdas)


def simulate_gfarma(L, spec, X, check=True):
    """Run the GF-ARMA recursion from zero initial conditions.

    ``X`` is n-by-T (column t is the input at time t); returns n-by-T.
    """
    L = check_laplacian(L)
    X = as_float_array(X, "trajectory", ndim=2)
    n, T = X.shape
    if n != L.shape[0]:
        raise ValidationError(f"trajectory has {n} rows, graph has {L.shape[0]} nodes")
    basis = eigendecompose(L)
    if check:
        spec.check_stability(basis.lambdas)
    a, b = spec.tap_responses(basis.lambdas)
    # per-frequency scalar recursions in the GFT domain
    Xt = basis.U.T @ X
    Yt = np.zeros_like(Xt)
    for t in range(T):
        acc = np.zeros(n)
        for s in range(min(spec.r, t) + 1):
            acc += b[s] * Xt[:, t - s]
        for s in range(1, min(spec.q, t) + 1):
            acc += a[s - 1] * Yt[:, t - s]
        Yt[:, t] = acc
    return basis.U @ Yt


def joint_transfer(spec, lambdas, z):
    """``H(lambda, z) = b(z) / a(z)`` for each eigenvalue and each ``z``.

    Returns an array of shape ``(len(lambdas), len(z))`` (squeezed for
    scalar inputs).  Index-dependent taps are evaluated relative to the
    spectrum passed in.
    """
    lam = np.atleast_1d(np.asarray(lambdas, dtype=float))
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    a, b = spec.tap_responses(lam)
    zinv = 1.0 / zz
    num = sum(b[s][:, None] * zinv[None, :] ** s for s in range(spec.r + 1))
    den = 1.0 - sum(a[s - 1][:, None] * zinv[None, :] ** s for s in range(1, spec.q + 1))
    den = np.broadcast_to(den, num.shape)
    if np.any(np.abs(den) < 1e-14):
        raise SingularityError("joint transfer function evaluated at a pole")
    H = num / den
    if np.ndim(lambdas) == 0 and np.ndim(z) == 0:
        return complex(H[0, 0])
    if np.ndim(z) == 0:
        return H[:, 0]
    if np.ndim(lambdas) == 0:
        return H[0]
    return H


def temporal_lowpass_ratio(spec, lambdas, k, omega0, gridsize=256):
    """Graph-temporal low-pass ratio on a uniform frequency grid.

    The low band is ``lambda_1..lambda_k`` with ``omega`` on ``gridsize``
    points of ``[0, omega0]``; the high band is ``lambda_{k+1}..lambda_n``
    with ``gridsize`` interior points of ``(omega0, 2 pi)``.
    """
    lam = np.asarray(lambdas, dtype=float)
    k = check_band(k, lam.size)
    if not 0 < omega0 < 2 * math.pi:
        raise ValidationError("omega0 must lie in (0, 2 pi)")
    if gridsize < 16:
        raise ValidationError("gridsize must be at least 16")
    w_low = np.linspace(0.0, omega0, gridsize)
    w_high = np.linspace(omega0, 2 * math.pi, gridsize + 2)[1:-1]
    H_low = np.abs(joint_transfer(spec, lam, np.exp(1j * w_low)))[:k]
    H_high = np.abs(joint_transfer(spec, lam, np.exp(1j * w_high)))[k:]
    den = float(np.min(H_low))
    if den == 0:
        return math.inf
    return float(np.max(H_high)) / den


def steady_state(L, alpha, beta, x):
    """Fixed point of the opinion recursion under a constant input.

    Solves ``(beta I + (1-beta) alpha L) y = beta x``, i.e. the resolvent
    filter ``(I + a L)^{-1}`` with ``a = alpha (1-beta) / beta``.
    """
    L = check_laplacian(L)
    if not 0 < beta < 1:
        raise ValidationError("beta must lie in (0, 1)")
    if alpha <= 0:
        raise ValidationError("alpha must be positive")
    x = np.asarray(x, dtype=float)
    n = L.shape[0]
    M = beta * np.eye(n) + (1.0 - beta) * alpha * L
    return np.linalg.solve(M, beta * x)


def steady_state_resolvent_alpha(alpha, beta):
    """Resolvent parameter equivalent to :func:`steady_state`."""
    return alpha * (1.0 - beta) / beta
