"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """Argument outside the accepted domain (shape, range, weights)."""


class PreconditionViolation(ValueError):
    """Input fails a numerical precondition, e.g. Hermiticity.

    ``deviation`` carries the offending magnitude so callers can report it.
    """

    def __init__(self, message: str, deviation: float):
        super().__init__(f"{message} (deviation {deviation:.3e})")
        self.deviation = deviation


class ValidationError(ValueError):
    """A physical invariant (PSD, CPTP, unit trace) does not hold."""


class RepresentationError(RuntimeError):
    """Requested representation is unavailable for this object."""
