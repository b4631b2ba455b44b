"""Exception hierarchy shared by every module of the package."""


class TypeBError(Exception):
    """Base class for domain errors raised by the library."""


class SizeLimitError(TypeBError):
    """Requested enumeration exceeds the configured cap."""


class DimensionError(TypeBError):
    """Operands have mismatched ground-set sizes or truncation orders."""


class DomainError(TypeBError):
    """Argument lies outside the domain of the operation."""


class NotInvertibleError(TypeBError, ZeroDivisionError):
    """Element of C (or a series) whose leading x-component is zero."""


class TruncationError(TypeBError):
    """A coefficient beyond the truncation order was required."""


class ExactnessError(TypeBError):
    """The result would not be rational."""
