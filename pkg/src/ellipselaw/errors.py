"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the region where an operation is defined."""


class CollisionError(RuntimeError):
    """Two particles came closer than the collision threshold."""


class ToleranceNotReached(RuntimeError):
    """Successive quadrature refinements disagree by more than requested."""

    def __init__(self, message, estimate=None, discrepancy=None):
        super().__init__(message)
        self.estimate = estimate
        self.discrepancy = discrepancy
