"""Exception hierarchy shared by all valfield modules."""


class ValfieldError(Exception):
    """Base class for all errors raised by this package."""


class RankMismatchError(ValfieldError):
    """Mixing rank-1 and rank-2 values in one operation."""


class DescriptorMismatchError(ValfieldError):
    """Operands belong to different fields or rings."""


class IndeterminateValuationError(ValfieldError):
    """An operation needed an exact valuation but only a lower bound is known."""


class PrecisionError(ValfieldError):
    """Working precision is insufficient and cannot be raised further."""


class BudgetExceededError(ValfieldError):
    """An enumeration would exceed the configured budget."""


class CertificationError(ValfieldError):
    """A required property (e.g. irreducibility) cannot be certified."""


class ParseError(ValfieldError):
    """Malformed text input; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
