"""Exception types raised by the library."""


class CrookedError(Exception):
    """Base class for all library errors."""


class UnsupportedDegree(CrookedError, ValueError):
    pass


class NonPrimitiveModulus(CrookedError, ValueError):
    pass


class ExponentOutOfRange(CrookedError, ValueError):
    pass


class GcdViolation(CrookedError, ValueError):
    pass


class NotNormalized(CrookedError, ValueError):
    """Raised when a truth table has f(0) != 0 and normalization was not requested."""


class ZeroDirection(CrookedError, ValueError):
    pass


class EqualPoints(CrookedError, ValueError):
    pass


class TooLarge(CrookedError):
    """A feasibility guard was exceeded."""


class NoSolution(CrookedError):
    pass


class NotAViolation(CrookedError):
    pass


class RequiresApn(CrookedError):
    pass


class Disconnected(CrookedError):
    pass


class PreconditionFailed(CrookedError):
    pass
