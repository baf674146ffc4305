"""Exception hierarchy shared by all quantrap modules."""


class QuantrapError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(QuantrapError, ValueError):
    pass


class GridMismatch(QuantrapError, ValueError):
    pass


class PreconditionViolated(QuantrapError, ValueError):
    pass


class OutOfRange(QuantrapError, ValueError):
    pass


class UnsupportedForRegularized(QuantrapError):
    pass


class UnsupportedRange(QuantrapError, ValueError):
    pass


class UnfaithfulExpansion(QuantrapError):
    """The eigenbasis expansion misses more coefficient mass than allowed."""

    def __init__(self, deficit: float, threshold: float):
        self.deficit = deficit
        self.threshold = threshold
        super().__init__(
            f"expansion loses {deficit:.3e} of the state's norm^2 (threshold {threshold:.1e})"
        )
