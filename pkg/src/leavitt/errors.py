"""Exception hierarchy shared across the package."""


class LeavittError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(LeavittError):
    """Malformed input: graph JSON, point JSON, field spec, or element syntax."""


class CompositionError(LeavittError):
    """Range/source mismatch when composing paths or groupoid elements."""


class OverShiftError(LeavittError):
    """Shift past the end of a finite path."""


class FieldMismatchError(LeavittError):
    """Operands belong to different coefficient fields."""


class CannotCertifyError(LeavittError):
    """Irreducibility cannot be decided with the implemented tests."""


class BaseMismatchError(LeavittError):
    """Class elements over distinct base points were combined."""


class AperiodicityError(LeavittError):
    """A generator claimed aperiodic produced a periodic memoized prefix."""


class IncompatibleCoefficientsError(LeavittError):
    """Coefficient module does not match the isotropy of the base point."""


class PartialMapError(LeavittError):
    """A homomorphism check needed a basis vector the map does not cover."""
