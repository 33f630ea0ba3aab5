"""Exception hierarchy.

The CLI maps each family to an exit code, so library code should raise the
most specific class that applies.
"""


class GspError(Exception):
    """Base class for all package errors."""

    exit_code = 3


class ConfigError(GspError, ValueError):
    """Invalid experiment configuration or usage."""

    exit_code = 1


class ValidationError(GspError, ValueError):
    """Input data violates a structural invariant (symmetry, shape, sign)."""

    exit_code = 2


class SamplingError(ValidationError):
    """Sampling set cannot support bandlimited recovery."""

    def __init__(self, message, sigma_min=None):
        super().__init__(message)
        self.sigma_min = sigma_min


class NumericalError(GspError, ArithmeticError):
    """A computation failed or would diverge."""

    exit_code = 3


class InstabilityError(NumericalError):
    """Filter or recursion is unstable at some graph frequency."""


class SingularityError(NumericalError):
    """Evaluation hit a pole of a transfer function."""


class UnderdeterminedError(NumericalError):
    """The problem has no unique solution."""
