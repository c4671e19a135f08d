"""Exception types shared across the package."""


class CosmicError(Exception):
    """Base class for all package errors."""


class ConfigurationError(CosmicError):
    """A parameter or config file violates its documented range or shape."""


class ValidationError(CosmicError):
    """User-supplied input failed validation."""


class NotFoundError(CosmicError):
    """A requested record does not exist."""


class ConflictError(CosmicError):
    """An append collided with an existing record id."""


class IngestionError(CosmicError):
    """A dataset locator could not be read at all (record-level problems
    are collected into the ingestion report instead)."""


class IndexError_(CosmicError):
    """Retrieval index could not be built (empty inputs)."""


class ProviderError(CosmicError):
    """A generation provider call failed or timed out.

    ``retry_safe`` is True when the failure happened before any output was
    produced, so the caller may retry without side effects.
    """

    def __init__(self, message: str, provider_id: str, retry_safe: bool = True):
        super().__init__(message)
        self.provider_id = provider_id
        self.retry_safe = retry_safe


class StructuredOutputError(CosmicError):
    """Provider reply could not be parsed into the instructed sections,
    even after one reformat retry."""


class ReplyParseError(CosmicError):
    """A single provider reply is missing a mandatory section."""
