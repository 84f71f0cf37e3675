"""Exception hierarchy shared by all botdetect modules."""


class BotDetectError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BotDetectError):
    """An operation received input outside its mathematical domain."""


class DataError(BotDetectError):
    """Malformed or inconsistent input data."""


class EmptyDatasetError(DataError):
    """An ingestion or evaluation step produced zero usable records."""


class ConfigError(BotDetectError):
    """Invalid configuration values."""


class SamplingError(BotDetectError):
    """A requested sample cannot be drawn from the available data."""


class TrainingError(BotDetectError):
    """Model training preconditions are not met."""


class CompatibilityError(BotDetectError):
    """A model was asked to score vectors from a different feature registry."""


class DegenerateModelError(BotDetectError):
    """A trained model has no usable structure (e.g. no splits at all)."""
