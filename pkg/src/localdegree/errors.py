"""Exception hierarchy shared by all modules."""


class LocalDegreeError(Exception):
    """Base class for every error raised by this package."""


class FieldError(LocalDegreeError, ValueError):
    """Unsupported coefficient field (characteristic 2, non-prime order)."""


class EvenCharacteristicError(FieldError):
    pass


class FieldMismatchError(LocalDegreeError, ValueError):
    pass


class ZeroInversionError(LocalDegreeError, ZeroDivisionError):
    pass


class ZeroInputError(LocalDegreeError, ValueError):
    pass


class DimensionMismatchError(LocalDegreeError, ValueError):
    pass


class ZeroPolynomialError(LocalDegreeError, ValueError):
    pass


class ConstantTermNonzeroError(LocalDegreeError, ValueError):
    """Some component of the map does not vanish at the origin."""


class NotIsolatedError(LocalDegreeError):
    """The quotient did not stabilize before the K cap.

    Either the zero at the origin is not isolated, or the cap is too small
    for the local multiplicity.
    """


class InternalInvariantViolation(LocalDegreeError, AssertionError):
    """A mathematically impossible state was reached; indicates a bug."""


class SingularInputError(LocalDegreeError, ValueError):
    pass


class SingularMatrixError(LocalDegreeError, ValueError):
    pass


class NoLinearPartError(LocalDegreeError, ValueError):
    pass


class DimensionTooSmallError(LocalDegreeError, ValueError):
    pass


class SamplingExhaustedError(LocalDegreeError, RuntimeError):
    pass
