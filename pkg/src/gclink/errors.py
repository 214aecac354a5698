"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when a fraction, tangle, or parameter fails validation."""


class NotDisjointError(ValueError):
    """Raised when an operation requires disjoint circles but got intersecting or equal ones."""


class NotInvariantError(RuntimeError):
    """Raised when a link is not carried to itself by a claimed symmetry."""


class CertificateError(RuntimeError):
    """Raised when a certification check is falsified."""


class ProjectionError(RuntimeError):
    """Raised when a planar projection cannot resolve its crossings."""
