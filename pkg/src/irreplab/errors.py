"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class NumericFailureError(RuntimeError):
    """Raised when an iterative numeric routine fails to converge.

    Attributes
    ----------
    sweeps : int or None
        Number of sweeps (or iterations) completed before giving up,
        when the failing routine counts them.
    """

    def __init__(self, message, sweeps=None):
        super().__init__(message)
        self.sweeps = sweeps
