"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input object (distribution, table, unitary, protocol) is malformed."""


class ParameterError(ValueError):
    """A scalar parameter lies outside the range an operation supports."""


class DomainError(ValueError):
    """A function was evaluated outside its mathematical domain."""
