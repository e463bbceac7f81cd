"""Error types shared across the package."""


class ValidationError(ValueError):
    """Input violates an operation's precondition."""


class CapacityError(RuntimeError):
    """Request exceeds an exhaustive-enumeration ceiling."""


class InternalCheckError(AssertionError):
    """A constructed object failed its own post-condition check."""
