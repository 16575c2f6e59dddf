"""Exception hierarchy shared by every pcakit module."""


class PcaKitError(Exception):
    """Base class for all errors raised by pcakit."""


class ShapeError(PcaKitError, ValueError):
    """Operands have incompatible dimensions."""


class ContractError(PcaKitError, ValueError):
    """An argument violates a documented precondition."""


class SingularMatrixError(PcaKitError, ArithmeticError):
    """Matrix is singular or too close to singular to invert."""


class ConvergenceError(PcaKitError, ArithmeticError):
    """An iterative method failed to converge within its budget."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class InsufficientDataError(PcaKitError, ValueError):
    """Too few observations for the requested statistic."""


class DegenerateColumnError(PcaKitError, ValueError):
    """A column has zero spread, so scale-based statistics are undefined."""


class UndefinedMeasureError(PcaKitError, ArithmeticError):
    """A ratio statistic reduces to 0/0."""


class SchemaError(PcaKitError, KeyError):
    """A referenced column does not exist."""

    def __str__(self) -> str:
        # KeyError quotes its argument; we want the plain message
        return str(self.args[0]) if self.args else ""


class DataParseError(PcaKitError, ValueError):
    """A CSV cell could not be parsed as a finite real number."""
