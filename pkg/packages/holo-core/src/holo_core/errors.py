"""Exception hierarchy shared by every holo_core module."""

from __future__ import annotations

from typing import Any


class HoloError(Exception):
    """Base class for all holo errors.

    ``details`` carries the structured payload (offending eigenvalue,
    residual, invariant factors, ...) so callers can report it without
    parsing the message.
    """

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.details: dict[str, Any] = details


class InvalidDataError(HoloError, ValueError):
    """Input contains non-finite entries or has the wrong structure."""


class ShapeError(InvalidDataError):
    """A square matrix was required."""


class AsymmetricInputError(InvalidDataError):
    """A complex symmetric matrix was required."""


class UnsupportedSizeError(HoloError, ValueError):
    """Matrix dimension is beyond the desk-scale limit."""


class DomainError(HoloError, ValueError):
    """Input lies outside the domain of the operation."""

    def __init__(self, message: str, eigenvalue: complex | None = None, **details: Any) -> None:
        super().__init__(message, eigenvalue=eigenvalue, **details)
        self.eigenvalue = eigenvalue


class NumericError(HoloError, ArithmeticError):
    """An iteration failed to reach the requested accuracy."""

    def __init__(
        self, message: str, residual: float, iterations: int = 0, **details: Any,
    ) -> None:
        super().__init__(message, residual=residual, iterations=iterations, **details)
        self.residual = residual
        self.iterations = iterations


class DegenerateInputError(HoloError, ValueError):
    """A construction hit a singular intermediate matrix."""


class ResolutionError(HoloError, ValueError):
    """Path samples are too coarse for continuous lifting."""

    def __init__(self, message: str, step: int, jump: float) -> None:
        super().__init__(message, step=step, jump=jump)
        self.step = step
        self.jump = jump


class InvalidElementError(HoloError, ValueError):
    """A covering-group element violates its compatibility condition."""


class TorsionObstructionError(HoloError, ValueError):
    """A lattice quotient that must be free has torsion."""

    def __init__(self, message: str, invariants: list[int]) -> None:
        super().__init__(message, invariants=invariants)
        self.invariants = invariants
