"""Exception types shared across the package."""


class MatchboundError(Exception):
    """Base class for all package-specific errors."""


class DegenerateInputError(MatchboundError, ValueError):
    """A point set violates general position (collinear triple or duplicate x)."""


class UsageError(MatchboundError, ValueError):
    """An operation was called with arguments outside its contract."""


class PreconditionError(MatchboundError, ValueError):
    """A structural precondition (isolated point, shared bifurcation, ...) is unmet."""


class CapExceededError(UsageError):
    """Requested enumeration exceeds the configured instance-size cap."""


class GenerationError(MatchboundError, RuntimeError):
    """Random point-set generation exhausted its retry budget."""


class ConvergenceError(MatchboundError, RuntimeError):
    """The growth-base fixpoint iteration failed to converge."""
