"""Graph filters: specifications, frequency responses and application.

A filter is described by a :class:`FilterSpec`.  Responses are tabulated at
the actual graph frequencies, so index-based filters (ideal low/high pass)
and ``Order1`` (normalised by the largest eigenvalue) are evaluated relative
to the whole spectrum passed in.
"""
import math
from dataclasses import dataclass

import numpy as np

from ._validation import as_float_array, check_band
from .errors import ConfigError, InstabilityError, ValidationError


class FilterSpec:
    """Base class; subclasses implement :meth:`response`."""

    kind = None

    def response(self, lambdas):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Polynomial(FilterSpec):
    """``sum_p coeffs[p] L^p``, lowest order first."""

    coeffs: tuple
    kind = "polynomial"

    def __post_init__(self):
        coeffs = tuple(float(c) for c in np.atleast_1d(self.coeffs))
        if not coeffs:
            raise ValidationError("polynomial filter needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    def response(self, lambdas):
        lam = np.asarray(lambdas, dtype=float)
        h = np.full_like(lam, self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            h = h * lam + c
        return h

    def to_dict(self):
        return {"kind": self.kind, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Response(FilterSpec):
    """Explicit table of response values, one per eigenvalue."""

    h: tuple
    kind = "response"

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(float(v) for v in np.atleast_1d(self.h)))

    def response(self, lambdas):
        lam = np.asarray(lambdas, dtype=float)
        if lam.shape != (len(self.h),):
            raise ValidationError(f"response table has {len(self.h)} entries for {lam.size} eigenvalues")
        return np.array(self.h)

    def to_dict(self):
        return {"kind": self.kind, "h": list(self.h)}


@dataclass(frozen=True)
class IdealLowPass(FilterSpec):
    """Unit response on the bottom ``k`` frequencies, zero above."""

    k: int
    kind = "ideal_low_pass"

    def response(self, lambdas):
        lam = np.asarray(lambdas, dtype=float)
        return (np.arange(lam.size) < self.k).astype(float)

    def to_dict(self):
        return {"kind": self.kind, "k": int(self.k)}


@dataclass(frozen=True)
class IdealHighPass(FilterSpec):
    k: int
    kind = "ideal_high_pass"

    def response(self, lambdas):
        lam = np.asarray(lambdas, dtype=float)
        return (np.arange(lam.size) >= self.k).astype(float)

    def to_dict(self):
        return {"kind": self.kind, "k": int(self.k)}


@dataclass(frozen=True)
class Diffusion(FilterSpec):
    """Heat kernel ``exp(-t_sigma L)``."""

    t_sigma: float
    kind = "diffusion"

    def __post_init__(self):
        if not self.t_sigma > 0:
            raise ValidationError(f"diffusion requires t_sigma > 0, got {self.t_sigma}")

    def response(self, lambdas):
        return np.exp(-self.t_sigma * np.asarray(lambdas, dtype=float))

    def to_dict(self):
        return {"kind": self.kind, "t_sigma": float(self.t_sigma)}


@dataclass(frozen=True)
class Resolvent(FilterSpec):
    """``(I + alpha L)^{-1}``."""

    alpha: float
    kind = "resolvent"

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValidationError(f"resolvent requires alpha > 0, got {self.alpha}")

    def response(self, lambdas):
        return 1.0 / (1.0 + self.alpha * np.asarray(lambdas, dtype=float))

    def to_dict(self):
        return {"kind": self.kind, "alpha": float(self.alpha)}


@dataclass(frozen=True)
class Order1(FilterSpec):
    """``I - L / lambda_max``."""

    kind = "order1"

    def response(self, lambdas):
        lam = np.asarray(lambdas, dtype=float)
        lam_max = lam[-1]
        if lam_max <= 0:
            raise ValidationError("order-1 filter needs a positive largest eigenvalue")
        return (lam_max - lam) / lam_max

    def to_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class FinanceEquilibrium(FilterSpec):
    """Equilibrium of ``y <- (1-beta) H y + beta x``: ``beta / (1 - (1-beta) h)``."""

    beta: float
    inner: FilterSpec
    kind = "finance_equilibrium"

    def __post_init__(self):
        if not 0 < self.beta < 1:
            raise ValidationError(f"beta must lie in (0, 1), got {self.beta}")

    def response(self, lambdas):
        h_inner = self.inner.response(lambdas)
        denom = 1.0 - (1.0 - self.beta) * h_inner
        if np.any(denom <= 0):
            raise InstabilityError("finance equilibrium is unstable: (1-beta) * h_inner >= 1 at some frequency")
        return self.beta / denom

    def to_dict(self):
        return {"kind": self.kind, "beta": float(self.beta), "inner": self.inner.to_dict()}


_KINDS = {
    cls.kind: cls
    for cls in (Polynomial, Response, IdealLowPass, IdealHighPass, Diffusion, Resolvent, Order1, FinanceEquilibrium)
}


def filter_from_dict(d):
    """Build a :class:`FilterSpec` from its JSON form."""
    if isinstance(d, FilterSpec):
        return d
    try:
        d = dict(d)
        kind = d.pop("kind")
        cls = _KINDS[kind]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"unknown or missing filter kind in {d!r}") from exc
    if cls is FinanceEquilibrium:
        d["inner"] = filter_from_dict(d["inner"])
    try:
        return cls(**d)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for filter {kind!r}: {exc}") from exc


def frequency_response(spec, lambdas):
    """Evaluate ``h(lambda_i)`` for each eigenvalue (ascending)."""
    lam = as_float_array(lambdas, "lambdas", ndim=1)
    if np.any(np.diff(lam) < -1e-12 * max(1.0, float(np.max(np.abs(lam))))):
        raise ValidationError("lambdas must be ascending")
    return spec.response(lam)


def apply_polynomial(L, coeffs, X):
    """``sum_p coeffs[p] L^p X`` by Horner's rule; ``L^p`` is never formed."""
    coeffs = np.atleast_1d(np.asarray(coeffs, dtype=float))
    if coeffs.size == 0:
        raise ValidationError("coefficient list is empty")
    X = np.asarray(X, dtype=float)
    if X.shape[0] != L.shape[0]:
        raise ValidationError(f"signal has {X.shape[0]} rows, graph has {L.shape[0]} nodes")
    Y = coeffs[-1] * X
    for c in coeffs[-2::-1]:
        Y = L @ Y + c * X
    return Y


def apply_spectral(basis, spec, X):
    """``U diag(h) U^T X`` with ``h`` the response of ``spec`` on the basis spectrum."""
    X = np.asarray(X, dtype=float)
    if X.shape[0] != basis.n:
        raise ValidationError(f"signal has {X.shape[0]} rows, basis has {basis.n}")
    h = frequency_response(spec, basis.lambdas)
    if not np.all(np.isfinite(h)):
        raise InstabilityError("filter response is not finite")
    Xt = basis.U.T @ X
    Xt = h * Xt if X.ndim == 1 else h[:, None] * Xt
    return basis.U @ Xt


def apply_diffusion_series(L, t_sigma, X, tol=1e-12):
    """``exp(-t_sigma L) X`` by scaled Taylor series, no eigendecomposition.

    The time interval is split into ``s`` sub-steps with ``||t L / s||_1 <= 1``
    and each sub-step is summed until the next term is below ``tol``.
    """
    X = np.asarray(X, dtype=float)
    if t_sigma < 0:
        raise ValidationError("t_sigma must be non-negative")
    norm = float(np.max(np.sum(np.abs(L), axis=0))) * t_sigma
    steps = max(1, math.ceil(norm))
    tau = t_sigma / steps
    Y = X.copy()
    for _ in range(steps):
        term = Y
        acc = Y.copy()
        j = 1
        while True:
            term = (-tau / j) * (L @ term)
            acc = acc + term
            if np.max(np.abs(term)) <= tol * max(1.0, float(np.max(np.abs(acc)))):
                break
            j += 1
        Y = acc
    return Y


def low_pass_ratio(response, k):
    """Ratio of the largest high-band to the smallest low-band magnitude.

    ``k`` is the bandwidth (1-based count of low frequencies).  Returns
    ``inf`` when the low band contains a zero; the filter is k-low-pass iff
    the ratio is below one.
    """
    h = np.abs(as_float_array(response, "response", ndim=1))
    k = check_band(k, h.size)
    den = np.min(h[:k])
    num = np.max(h[k:])
    if den == 0:
        return math.inf
    return float(num / den)


def is_low_pass(response, k):
    return low_pass_ratio(response, k) < 1.0
