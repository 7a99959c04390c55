"""Exception hierarchy shared by all latcoh modules."""


class LatCohError(Exception):
    """Base class for every error raised by latcoh."""


class DomainError(LatCohError, ValueError):
    """An argument lies outside the domain of an operation."""


class StructuralError(LatCohError, ValueError):
    """A combinatorial structure is malformed (e.g. not face-closed)."""


class PreconditionError(LatCohError, ValueError):
    """A mathematical hypothesis required by an operation does not hold."""


class PathError(LatCohError, ValueError):
    """A lattice path violates the path invariants."""


class ResourceError(LatCohError, RuntimeError):
    """An enumeration exceeded its configured budget.

    ``partial`` carries whatever was computed before giving up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UnsupportedGermError(LatCohError, ValueError):
    """The germ has a spectral number equal to 1."""


class UsageError(LatCohError, ValueError):
    """Malformed user input (schema violations, unknown formats)."""


class DimensionError(UsageError):
    """A table does not match the declared rectangle."""


class InvariantError(LatCohError, AssertionError):
    """An identity that must hold by theory failed at runtime."""
