"""Exception types shared across the package."""


class PolyrecError(Exception):
    """Base class for all package-specific errors."""


class InvalidIndexError(PolyrecError):
    """A recurrence was asked for an index outside its valid range."""


class NonzeroConstantTermError(PolyrecError):
    """series_exp requires a series with zero constant term."""


class UnsupportedShapeError(PolyrecError):
    """A recurrence spec falls outside the shape an operation supports."""


class UnknownFamilyError(PolyrecError):
    """Requested family name is not in the catalog."""


class ParameterError(PolyrecError):
    """A family parameter is missing or out of range."""


class SizeGuardError(PolyrecError):
    """Exhaustive enumeration was requested beyond the desk-scale guard."""


class InvalidDistributionError(PolyrecError):
    """A polynomial with a negative coefficient cannot define a PMF."""


class ZeroMassError(PolyrecError):
    """A zero polynomial carries no probability mass."""


class ZeroVarianceError(PolyrecError):
    """Normality diagnostics need strictly positive variance."""


class SaddleFailureError(PolyrecError):
    """The saddle-point equation could not be solved for this input."""


class SaddleOverflowError(PolyrecError):
    """Direct evaluation would overflow double precision; use the
    log-domain helpers instead."""


class ParseError(PolyrecError):
    """Rejected spec text, carrying the offending position.

    Renders as "origin:line:column: message" so editors can jump to the
    spot; line and column are 1-based.
    """

    def __init__(self, origin: str, line: int, column: int, message: str):
        super().__init__(f"{origin}:{line}:{column}: {message}")
        self.origin = origin
        self.line = line
        self.column = column
        self.reason = message
