"""Exception hierarchy shared by every module."""


class ShahError(Exception):
    """Base class for all errors raised by this package."""


class InvalidKeyError(ShahError, ValueError):
    pass


class DivergenceError(ShahError, ArithmeticError):
    """A Tinkerbell orbit left the bounded region around the attractor.

    ``index`` is the 1-based step count at which escape was detected.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class StarvationError(ShahError, RuntimeError):
    """Too many consecutive pairs were discarded by the shrinking rule."""


class ExhaustedError(ShahError, RuntimeError):
    """An injected pair sequence ran out before the request was satisfied."""


class DegenerateSampleError(ShahError, ValueError):
    pass


class LengthMismatchError(ShahError, ValueError):
    pass


class InsufficientDataError(ShahError, ValueError):
    pass
