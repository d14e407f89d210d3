"""Exception types shared across the engines."""


class BraidCircuitError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(BraidCircuitError, ValueError):
    """A numeric argument is outside its allowed range or non-finite."""


class DimensionMismatch(BraidCircuitError, ValueError):
    """Operands have incompatible shapes or widths."""


class NotNormalized(BraidCircuitError, ValueError):
    """A singular-value spectrum does not square-sum to one."""


class ParseError(BraidCircuitError, ValueError):
    """Malformed layout bytes; carries the offending byte offset."""

    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset


class UnsupportedParameter(BraidCircuitError, ValueError):
    """An engine was asked to run outside its supported parameter set."""


class UnsupportedLayout(BraidCircuitError, ValueError):
    """A layout contains gate kinds an operation cannot handle."""


class ZeroNormTrajectory(BraidCircuitError, ArithmeticError):
    """Forced measurements annihilated the state; trajectory is discarded."""


class ResourceLimit(BraidCircuitError, ValueError):
    """Requested system size exceeds the dense-engine guard."""


class InvalidConfig(BraidCircuitError, ValueError):
    """A sweep configuration is inconsistent or empty."""
