"""Exception types shared across the package.

Everything derives from HypersymError (a ValueError) so callers can catch
broadly; messages always name the offending object (vertex, edge, unit,
matrix entry) so failures are actionable.
"""


class HypersymError(ValueError):
    """Base class for all errors raised by this package."""


class DocumentError(HypersymError):
    """A JSON document is malformed or violates its schema."""


class NotAutomorphismError(HypersymError):
    """A vertex bijection does not map edges onto edges."""


class NotUnitAutomorphismError(HypersymError):
    """A unit bijection does not induce a bijection on edges."""


class NotUnitCompatibleError(HypersymError):
    """A matrix violates one of the unit-compatibility conditions."""


class NotEquitableError(HypersymError):
    """A partition fails the constant-row-sum condition for a matrix."""


class IncompatibleMatrixError(HypersymError):
    """A matrix is not compatible with the given symmetry."""
