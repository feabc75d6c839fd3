class UsageError(ValueError):
    """Raised when an operation is called outside its contract."""


class ResourceCapError(RuntimeError):
    """Raised when an iteration or size cap is exhausted."""
