"""Exception types shared across the package."""

from __future__ import annotations


class QubitPairError(Exception):
    """Base class for all package-specific errors."""


class ContractViolationError(QubitPairError, ValueError):
    """An argument broke a documented precondition (shape, norm, Hermiticity...)."""


class DomainError(QubitPairError, ValueError):
    """A closed-form expression is not defined at the requested parameters."""


class NumericsError(QubitPairError, RuntimeError):
    """A numerical computation failed or exceeded its tolerance."""


class DegenerateSteadyStateError(NumericsError):
    """The generator has a non-unique stationary state.

    Carries the two smallest singular values of the generator so callers can
    see how close to degenerate the problem actually is.
    """

    def __init__(self, smallest: float, second_smallest: float):
        self.smallest = smallest
        self.second_smallest = second_smallest
        super().__init__(
            "steady state is not unique: the two smallest singular values of the "
            f"generator are {smallest:.3e} and {second_smallest:.3e}"
        )


class NumericalDegeneracyError(NumericsError):
    """An eigenvalue spectrum came out unphysical (large imaginary parts or NaN)."""


class TraceDriftError(NumericsError):
    """Fixed-step integration lost the trace; retry with a smaller dt."""
