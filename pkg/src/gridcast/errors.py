"""Exception hierarchy shared across the package."""


class GridcastError(Exception):
    """Base class for all package errors."""


class OutOfRangeDimensions(GridcastError, ValueError):
    pass


class VertexOutOfRange(GridcastError, ValueError):
    pass


class RadiusUnsupported(GridcastError, ValueError):
    pass


class InvalidStrength(GridcastError, ValueError):
    pass


class WrongKind(GridcastError, TypeError):
    pass


class InfeasibleCertificate(GridcastError):
    """A weighting offered as a certificate fails its feasibility check."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InfeasibleOnPath(InfeasibleCertificate):
    pass


class TooLarge(GridcastError, ValueError):
    pass


class BudgetExceeded(GridcastError):
    """Search stopped before proving optimality.

    ``best`` holds the incumbent found so far (may be None).
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class UnsupportedWidth(GridcastError, ValueError):
    pass


class DimensionsTooSmall(GridcastError, ValueError):
    pass


class UnsupportedRange(GridcastError, ValueError):
    pass


class DataIntegrityError(GridcastError):
    pass


class BoundConflict(GridcastError):
    """A tabulated upper bound falls below a certified lower bound."""

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
