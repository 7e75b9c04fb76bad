"""Exception types shared across the kernel."""


class OtnError(Exception):
    """Base class for all kernel errors."""


class ParseError(OtnError):
    """Malformed concrete syntax.  Carries the offending position."""

    def __init__(self, msg, pos=None):
        super().__init__(msg if pos is None else "%s (at position %d)" % (msg, pos))
        self.pos = pos


class IndexError_(OtnError):
    """Cardinal index out of the range allowed by the session parameter N."""


# Conventional name used by the public API; kept as an alias so the class
# itself does not shadow the builtin inside this module.
IndexError = IndexError_


class RangeError(OtnError):
    """Value outside the domain a normal-form operation is defined on."""


class ShapeError(OtnError):
    """Operand does not have the shape an operation requires."""


class ZeroError(OtnError):
    """Zero operand where a positive value is required."""


class OrderError(OtnError):
    """Subtraction or comparison precondition violated (e.g. minuend too small)."""


class IrreducibilityError(OtnError):
    """Finite function fails the irreducibility precondition."""


class OrderViolation(OtnError):
    """Internal consistency failure of the comparison relation; carries witnesses."""

    def __init__(self, msg, witnesses=()):
        super().__init__(msg)
        self.witnesses = tuple(witnesses)


class BudgetError(OtnError):
    """Enumeration work limit exceeded."""
