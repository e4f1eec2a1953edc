"""Exception types shared across the package."""


class QGalerkinError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(QGalerkinError, ValueError):
    """Requested truncation order or index is not a positive integer in range."""


class InvalidControlError(QGalerkinError, ValueError):
    """Piecewise-constant control data is malformed (negative duration, ragged channels)."""


class InvalidExponentError(QGalerkinError, ValueError):
    """Norm or bound exponent outside its admissible range (e.g. s < 0, r >= k)."""


class ShapeMismatchError(QGalerkinError, ValueError):
    """Operands have incompatible dimensions, or an operation requires tri-diagonal coupling."""


class ModelError(QGalerkinError, ValueError):
    """A system specification cannot be evaluated (bad parameters, failed quadrature,
    invariant violation at construction).  Carries index context where available."""


class ContractViolationError(QGalerkinError, RuntimeError):
    """A numerical contract stated by an operation was violated at runtime."""


class ScenarioError(QGalerkinError, ValueError):
    """Scenario configuration is invalid.  ``field`` names the offending entry."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
