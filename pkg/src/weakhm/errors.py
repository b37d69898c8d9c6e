"""Exception types raised by the library."""


class WeakHMError(Exception):
    """Base class for every error raised by weakhm."""


class ResourceLimitError(WeakHMError):
    """An enumeration or search would exceed a configured cap."""


class SpaceMismatchError(WeakHMError, ValueError):
    pass


class InvalidCoordinateError(WeakHMError, IndexError):
    pass


class PreconditionError(WeakHMError, ValueError):
    """Inputs violate the documented precondition of an operation."""


class ParameterRangeError(WeakHMError, ValueError):
    pass


class InfeasibleValuesError(WeakHMError, ValueError):
    pass


class DimensionMismatchError(WeakHMError, ValueError):
    pass
