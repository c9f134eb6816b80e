"""Exception types shared by the engines and mapped to CLI exit codes."""


class HeckeLabError(Exception):
    """Base class for all library errors."""


class NotDivisibleError(HeckeLabError, ArithmeticError):
    """Raised when a jet polynomial has an x^0 term but must be divided by x."""

    def __init__(self, msg="not divisible by defining function"):
        super().__init__(msg)


class FrameNotAdaptedError(NotDivisibleError):
    def __init__(self, msg="frame not adapted"):
        super().__init__(msg)


class NotInvertibleError(HeckeLabError, ValueError):
    """The transition matrix does not define a bundle near D."""

    def __init__(self, msg="transition not invertible near D"):
        super().__init__(msg)


class PrecisionError(HeckeLabError):
    """Jet precision ran out. ``trace`` and ``bundle`` hold partial progress, if any."""

    def __init__(self, msg="insufficient jet order", trace=None, bundle=None):
        super().__init__(msg)
        self.trace = trace
        self.bundle = bundle


class ProfileError(HeckeLabError, ValueError):
    """Invalid HN profile data or an out-of-range block index."""
