class BoundExceededError(ValueError):
    """An enumeration or table would exceed its configured size bound."""


class ClassificationError(AssertionError):
    """A classification or structural check failed."""
