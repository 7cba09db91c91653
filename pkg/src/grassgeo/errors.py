"""Exception types shared across the package."""


class GrassGeoError(Exception):
    """Base class for all package-specific failures."""


class ConvergenceError(GrassGeoError):
    """An iterative factorization failed to converge within its sweep cap."""


class DimensionMismatchError(GrassGeoError, ValueError):
    """Operands live in incompatible spaces."""


class NotPositiveDefiniteError(GrassGeoError, ValueError):
    """A matrix required to be positive definite is not.

    Carries the index of the offending pivot when detected by Cholesky.
    """

    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot


class RankDeficiencyError(GrassGeoError, ValueError):
    """A matrix required to have full column rank does not."""

    def __init__(self, message, detected_rank=None):
        super().__init__(message)
        self.detected_rank = detected_rank


class DegenerateConfigurationError(GrassGeoError, ValueError):
    """Angles fail the genericity margins required by a derivative formula."""


class NoUniqueGeodesicError(GrassGeoError, ValueError):
    """The top Jordan angle is too close to pi/2 for a unique joining curve."""


class CapabilityError(GrassGeoError, ValueError):
    """The request exceeds an exact-enumeration capability bound."""


class NumericalConsistencyError(GrassGeoError, ArithmeticError):
    """A quantity violated a bound the theory guarantees, beyond roundoff."""


class MatrixParseError(GrassGeoError, ValueError):
    """Matrix text input is malformed."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column
