"""Exception types shared across the toolkit."""

from __future__ import annotations


class EnrichedFPError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(EnrichedFPError, ValueError):
    """A vector or matrix does not conform to the ambient space."""


class ParameterError(EnrichedFPError, ValueError):
    """A numeric parameter is outside its admissible range."""


class NumericOverflowError(EnrichedFPError, ArithmeticError):
    """An operator evaluation produced a non-finite value.

    ``step`` is the iteration index at which the overflow occurred, when the
    failure happened inside an iteration loop.
    """

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class DivergenceError(EnrichedFPError, ArithmeticError):
    """An iteration escaped the divergence guard.

    Carries the partial trace accumulated before the abort in ``trace``.
    """

    def __init__(self, message: str, step: int | None = None, trace=None):
        super().__init__(message)
        self.step = step
        self.trace = trace


class DegenerateOperatorError(EnrichedFPError, RuntimeError):
    """Every sampled pair was excluded: the operator is identity-like on the box."""


class PreconditionError(EnrichedFPError, ValueError):
    """An input violates a documented precondition (e.g. not a fixed point)."""


class ConfigError(EnrichedFPError, ValueError):
    """A problem configuration failed to parse or validate.

    ``field`` names the offending entry when known; ``line``/``column`` locate
    parse errors in the source file.
    """

    def __init__(self, message: str, field: str | None = None,
                 line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.field = field
        self.line = line
        self.column = column
