"""
Exceptions raised by TLS Complexity.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the formula it feeds."""


class NoSignChangeError(DomainError):
    """A root bracket does not straddle a sign change."""


class NonFiniteError(ValueError):
    """A function evaluation or input produced NaN or infinity."""


class UnsupportedModelError(ValueError):
    """The requested operation is not defined for this model kind."""


class NonConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration cap."""


class BoundaryMaximumError(RuntimeError):
    """A maximum was found on the edge of its search bracket."""

    def __init__(self, message: str, x_star: float = float("nan")):
        super().__init__(message)
        self.x_star = x_star
