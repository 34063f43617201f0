"""Exception types shared across the package."""


class LpcstarError(Exception):
    """Base class for all package errors."""


class InvalidLetter(LpcstarError):
    """A letter index lies outside the alphabet of the declared rank."""


class EnumerationTooLarge(LpcstarError):
    """An enumeration would exceed the configured cap.

    When a closed-form count is available it is attached as ``count`` so
    callers still get the formula value.
    """

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class GroupMismatch(LpcstarError):
    """Operands live in different ambient groups."""


class Inconclusive(LpcstarError):
    """A bounded search terminated without a decision either way."""


class MissingCertificate(LpcstarError):
    """An operation requires an lp or coset-summability certificate."""


class NotNormalized(LpcstarError):
    """A positive definite function was expected to satisfy phi(e) = 1."""


class ZeroVector(LpcstarError):
    """A nonzero vector was required."""


class NoComplement(LpcstarError):
    """The representation has no nonzero subspace orthogonal to invariants."""


class InfiniteIndex(LpcstarError):
    """A finite-index coset table was required."""


class EmptyJoin(LpcstarError):
    """A join needs at least one member seminorm."""


class ConfigError(LpcstarError):
    """An experiment configuration failed schema validation.

    ``path`` names the offending field, e.g. ``"okayasu.alphas"``.
    """

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path
