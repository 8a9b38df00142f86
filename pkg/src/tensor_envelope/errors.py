"""Exception types shared across the package."""


class EnvelopeError(Exception):
    """Base class for all package errors."""


class BackendMismatch(EnvelopeError):
    pass


class NotSurjective(EnvelopeError):
    pass


class NotInjective(EnvelopeError):
    pass


class SizeLimitExceeded(EnvelopeError):
    pass


class TargetMismatch(EnvelopeError):
    pass


class ObjectMismatch(EnvelopeError):
    pass


class IndexOutOfRange(EnvelopeError, IndexError):
    pass


class NotOneReduced(EnvelopeError):
    pass


class NoIsoFound(EnvelopeError):
    pass


class NotEqualComposites(EnvelopeError):
    pass


class NonSplitField(EnvelopeError):
    pass


class UnsupportedAutGroup(EnvelopeError):
    pass


class UnknownLabel(EnvelopeError, KeyError):
    pass


class ResolutionNotFinite(EnvelopeError):
    pass


class MutationFailed(EnvelopeError):
    pass


class ExtensionStepFailed(EnvelopeError):
    pass


class ConfigError(EnvelopeError):
    pass
