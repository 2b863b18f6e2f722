"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when parameters violate their domain constraints."""


class ResourceCapError(RuntimeError):
    """Raised when a computation would exceed a configured resource cap."""
