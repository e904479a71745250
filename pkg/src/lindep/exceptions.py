class LinDepError(Exception):
    """Base class for errors raised by this package."""


class InvalidFieldError(LinDepError, ValueError):
    """The requested GF(p^k) presentation is not a field."""


class CapacityError(LinDepError):
    """An input exceeds a configured size bound."""


class DisconnectedGraphError(LinDepError, ValueError):
    """A distance-based quantity was requested on a disconnected graph."""
