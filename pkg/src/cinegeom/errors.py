"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for all package-specific errors."""


class DomainMismatchError(GeometryError):
    """Two curves (or a curve and a raster window) live on different intervals."""


class PreconditionError(GeometryError):
    """An operation was called outside its documented parameter regime."""


class DuplicateCurveError(GeometryError):
    """A family contains two curves at zero C2 distance."""


class CinematicViolationError(GeometryError):
    """Diagnostic: a curve pair behaved in a way a cinematic family cannot
    (e.g. more than two sign changes of the difference)."""

    def __init__(self, message, roots=None):
        super().__init__(message)
        self.roots = roots or []


class SolverError(GeometryError):
    """An iterative solve (Newton, perturbation rounds) failed to converge."""


class MisalignmentError(GeometryError):
    """A raster and a quasi-product grid do not line up."""


class FrostmanError(GeometryError):
    """A point cloud failed its non-concentration validation."""

    def __init__(self, message, worst=None):
        super().__init__(message)
        self.worst = worst


class DegenerateCurveError(GeometryError):
    """A space curve fails the full-span condition at grid resolution."""
