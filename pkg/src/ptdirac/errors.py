"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An input lies outside the region where a formula is defined."""


class NumericalFailure(ArithmeticError):
    """A computation lost too much precision to be trusted."""


class QuadratureError(NumericalFailure):
    def __init__(self, message: str, error_estimate: float):
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


class NoBoundState(Exception):
    """No bound level exists for the requested quantum numbers.

    ``report`` carries the existence analysis (an ``ExistenceReport``).
    """

    def __init__(self, report):
        super().__init__(report.reason)
        self.report = report
