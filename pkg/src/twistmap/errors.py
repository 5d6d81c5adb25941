"""Exception hierarchy for twistmap."""


class TwistmapError(Exception):
    """Base class for all twistmap errors."""


class DomainError(TwistmapError, ValueError):
    """Invalid argument for a geometric operation (zero vector, singular
    matrix, measure request over a set of infinite measure, ...)."""


class ConstructionError(TwistmapError):
    """A map construction could not satisfy its preconditions.

    Carries optional machine-readable detail in ``info``.
    """

    def __init__(self, message, **info):
        super().__init__(message)
        self.info = dict(info)


class InversionError(TwistmapError):
    """Newton inversion failed to converge; the map is malformed."""


class CertificateError(TwistmapError):
    """An absolute-continuity certificate or budget extension is unavailable."""

    def __init__(self, message, **info):
        super().__init__(message)
        self.info = dict(info)


class IncompatibleConditions(TwistmapError):
    """Exact 1-D merge hypotheses failed; names the violated clause."""

    def __init__(self, clause, message):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


class SchemaError(TwistmapError, ValueError):
    """A serialized document does not match its schema."""
