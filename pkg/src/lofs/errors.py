"""Exception types shared across the library."""


class LofsError(Exception):
    """Base class for every error raised by this package."""


class IndexOutOfRange(LofsError):
    """An element index falls outside 0..n-1."""


class ShapeMismatch(LofsError):
    """Composed or compared values do not share the required (co)domains."""


class SizeLimitExceeded(LofsError):
    """A carrier or search space would exceed the configured bound."""


class NotAPoset(LofsError):
    """The operation requires an antisymmetric order."""


class MissingDirectedSup(LofsError):
    """A directed subset has no supremum.

    Unreachable for finite posets, where every directed subset has a
    maximum; kept so callers can guard the general contract.
    """


class AdjointMissing(LofsError):
    """An adjoint that provably exists could not be computed; this is a bug."""


class InvariantViolation(LofsError):
    """A value failed its construction-time invariants."""


class FormatError(LofsError):
    """A JSON document does not match the shared schemas."""
