"""Exception hierarchy for qfilter.

Every error raised on bad input derives from :class:`QFilterError`, which is
itself a ``ValueError`` so callers that only care about "bad input" can catch
that.
"""


class QFilterError(ValueError):
    """Base class for all qfilter input errors."""


class NormalizationError(QFilterError):
    """A state vector or the prior vector is not normalized."""


class PartitionError(QFilterError):
    """The subset boundary M is outside ``1 <= M < N``."""


class LengthMismatch(QFilterError):
    """Parallel input lists have different lengths."""


class RankError(QFilterError):
    """The input states span more than two dimensions."""


class DegenerateBasisError(QFilterError):
    """All states are parallel, so no two-dimensional basis exists."""


class NotRealError(QFilterError):
    """The real-state solver was given states with complex coordinates."""


class ShapeError(QFilterError):
    """The three-state solver was given an ensemble with N != 3 or M != 1."""


class DomainError(QFilterError):
    """A family parameter lies outside its admissible range."""


class SchemaError(QFilterError):
    """An ensemble file does not match the expected JSON layout."""


class IoError(QFilterError, OSError):
    """An input file could not be read."""
