"""Error taxonomy shared by every layer of the service.

Each exception maps to exactly one HTTP status in the API layer; 502 is
reserved for provider failures.
"""


class EmpaError(Exception):
    """Base class for all service errors."""


class ValidationError(EmpaError):
    """Request or domain data failed validation (-> 422).

    ``field`` names the offending field when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class NotFoundError(EmpaError):
    """Referenced user or module does not exist (-> 404)."""


class ConflictError(EmpaError):
    """Uniqueness violation, e.g. duplicate email (-> 409)."""


class ForbiddenError(EmpaError):
    """Operation on a locked module (-> 403)."""


class StorageError(EmpaError):
    """Persistence layer failure (-> 500). Nothing was persisted."""


class UpstreamError(EmpaError):
    """Text-generation provider failure (-> 502). Nothing was persisted."""


class ConfigurationError(EmpaError):
    """Invalid or missing configuration; raised at startup or template load."""
