"""Module for exceptions and warnings of the package."""
__all__ = [
    "BesselUnderflowWarning",
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "MagkernError",
    "SingularPointError",
    "UnsupportedMassError",
]


# standard library
from typing import Any, Optional, Sequence


class MagkernError(Exception):
    """Base class of all errors raised by the package."""

    pass


class DomainError(MagkernError, ValueError):
    """Argument outside the domain of an operation."""

    pass


class UnsupportedMassError(DomainError):
    """Zero mass given where a positive mass is required."""

    pass


class SingularPointError(DomainError):
    """Kernel requested at coincident points."""

    pass


class DivergenceError(DomainError):
    """Series or closed form diverges at the requested argument."""

    pass


class ConvergenceError(MagkernError, RuntimeError):
    """Numerical procedure failed to reach its tolerance.

    Args:
        message: Diagnostic message.
        best: Best estimate available when the procedure stopped.
        partial_sums: Partial sums of an extrapolated series, if any.
        recoverable: False if ``best`` must not be used even on a
            relaxed tolerance (exhausted budget or panels).

    """

    def __init__(
        self,
        message: str,
        best: Optional[Any] = None,
        partial_sums: Optional[Sequence[float]] = None,
        recoverable: bool = True,
    ) -> None:
        super().__init__(message)
        self.best = best
        self.partial_sums = list(partial_sums or [])
        self.recoverable = recoverable


class BesselUnderflowWarning(RuntimeWarning):
    """Modified Bessel function underflowed to zero."""

    pass
