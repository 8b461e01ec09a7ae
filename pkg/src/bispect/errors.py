"""Exception types shared across the package."""


class BispectError(Exception):
    """Base class for all package errors."""


class TagMismatchError(BispectError):
    """Operands belong to different groups (SU2 vs SO3)."""


class DomainError(BispectError, ValueError):
    """An argument lies outside its documented domain."""


class NotPositiveSemidefiniteError(BispectError):
    """Matrix handed to a PSD routine has a significantly negative eigenvalue."""


class SingularMatrixError(BispectError):
    """Matrix is singular or too ill-conditioned for the requested operation."""


class SingularCoefficientError(SingularMatrixError):
    """A recovered coefficient matrix is singular; carries the offending degree."""

    def __init__(self, ell: int, message: str = ""):
        self.ell = ell
        super().__init__(message or f"coefficient matrix at degree {ell} is singular")


class ZeroMeanError(BispectError):
    """Reconstruction requires a nonzero mean (A(0,0) != 0)."""


class MissingSideInfoError(BispectError):
    """SO(3) reconstruction needs the det side information and none was given."""


class NoAlignmentError(BispectError):
    """No group element aligns the two coefficient sets."""


class EmptyImageError(BispectError):
    """Image has no pixels inside the unit disk."""


class EmptyIndexError(BispectError):
    """Glyph index contains no entries."""


class FormatError(BispectError, ValueError):
    """A file does not conform to the documented format; carries a location."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{message}" + (f" (at {location})" if location else ""))


class VersionError(FormatError):
    """File declares an unsupported format version."""


class PrecisionWarning(UserWarning):
    """Quadrature rule is too coarse for the requested bandlimit; results are approximate."""
