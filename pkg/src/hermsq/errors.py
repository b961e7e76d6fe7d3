"""Exception hierarchy shared by all hermsq modules."""


class HermsqError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZeroError(HermsqError):
    """Inversion or division by an exactly-zero scalar."""


class ParseError(HermsqError):
    """Malformed textual input; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotMonomialError(HermsqError):
    """An operation restricted to monomial scalars received something else."""


class SingularMatrixError(HermsqError):
    """A nonsingular matrix was required."""


class ShapeError(HermsqError):
    """Dimension mismatch or unsupported algebra shape."""


class CertificateError(HermsqError):
    """Structurally invalid certificate (missing data, bad side conditions)."""


class ResourceLimitError(HermsqError):
    """Symbolic expansion would exceed the configured degree/size caps."""
