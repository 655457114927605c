"""Exception types shared across the package."""


class ConvvalError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(ConvvalError, ValueError):
    """Operands live in different ambient dimensions."""


class CapabilityLimit(ConvvalError, ValueError):
    """Input is valid but outside the supported size range."""


class PieceBudgetExceeded(CapabilityLimit):
    """An expansion would create more affine pieces than the configured cap."""


class ParseError(ConvvalError, ValueError):
    """A document or scalar string could not be parsed.

    Carries a human-readable location ("file:field") when available.
    """

    def __init__(self, message, where=""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
