"""Exception types shared by all weylscope modules."""


class WeylscopeError(Exception):
    """Base class for weylscope errors."""


class RangeError(WeylscopeError, ValueError):
    """An argument is outside the supported range or would exceed a cost cap."""


class PrecisionExhausted(WeylscopeError, ArithmeticError):
    """A certified error bound grew past the tolerated limit (2^-64 for phases)."""


class ApproximationError(WeylscopeError, ValueError):
    """A rational approximation does not satisfy |alpha - a/q| <= 1/q^2."""
