"""Exception types shared across the library."""


class CstreError(Exception):
    """Base class for all library-specific failures."""


class NotHermitian(CstreError):
    """Matrix is not Hermitian within tolerance."""


class NoConvergence(CstreError):
    """Eigensolver failed to converge."""


class SingularNegativePower(CstreError):
    """Negative matrix power of a singular matrix outside support-restricted mode."""


class BadSubsystemIndex(CstreError):
    """Subsystem selection empty or outside 1..N."""


class DimensionCapExceeded(CstreError):
    """Dense construction would exceed the configured dimension cap."""


class NoSignChange(CstreError):
    """Criterion keeps one sign on the whole search interval; no crossing to find."""


class ToleranceNotReached(CstreError):
    """Bisection hit the iteration cap before the bracket tolerance."""
