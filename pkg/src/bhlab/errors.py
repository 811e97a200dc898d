"""Exception hierarchy shared by all bhlab modules."""


class BhlabError(Exception):
    """Base class for all package-specific failures."""


class CapacityError(BhlabError):
    """Requested object exceeds the configured size limits."""


class RepresentationError(BhlabError):
    """Operation applied to a basis in the wrong representation."""


class DimensionMismatchError(BhlabError):
    """Operands built over incompatible bases or sizes."""


class SymmetryBrokenError(BhlabError):
    """Matrix does not commute with the symmetry required by a projection."""


class IntegrityError(BhlabError):
    """Input matrix violates a structural contract (e.g. non-finite entries)."""


class InsufficientDataError(BhlabError):
    """Not enough levels / spacings / extrema for the requested analysis."""


class ModelError(BhlabError):
    """Degenerate or invalid statistical model (e.g. sigma = 0)."""


class DomainError(BhlabError, ValueError):
    """Argument outside the mathematical domain of the function."""


class IntegratorError(BhlabError):
    """Propagation failed its norm or energy conservation contract."""


class DegenerateProfileError(BhlabError):
    """Overlap profile carries no off-diagonal weight; width fit rejected."""


class ProvenanceError(BhlabError):
    """Physical parameters of two compared objects do not match."""
