"""
Exception hierarchy for volterraheat
"""
from typing import Optional


class VolterraHeatError(Exception):
    """
    Base class for all errors raised by volterraheat
    """


class InvalidParameterError(VolterraHeatError, ValueError):
    """
    An argument violates the precondition of an operation
    """


class ConfigurationError(InvalidParameterError):
    """
    A settings value or environment override is invalid
    """


class NumericalError(VolterraHeatError, ArithmeticError):
    """
    A computation could not reach its requested accuracy
    """


class TermCapExceededError(NumericalError):
    """
    The series stopping rule did not fire within the term cap
    """

    def __init__(self, series_id: str, lam: float, t: float, cap: int):
        self.series_id = series_id
        self.lam = lam
        self.t = t
        self.cap = cap
        super().__init__(
            f"{series_id} series did not converge within {cap} terms "
            f"(lambda={lam!r}, t={t!r}); lambda^2 t^3 is too large for the tolerance"
        )


class DivisorUnderflowError(NumericalError):
    """
    The per-step divisor of the marching solver vanished
    """

    def __init__(self, step: int, divisor: float, message: Optional[str] = None):
        self.step = step
        self.divisor = divisor
        super().__init__(message or f"Step divisor {divisor!r} below 1e-14 at step {step}")
