class UsageError(ValueError):
    """An argument outside an operation's documented preconditions."""


class DomainError(ValueError):
    """A mathematical domain violation (log of a non-positive enclosure, n < 3, ...)."""


class StructuralError(RuntimeError):
    """The generated data does not contain an object the verification relies on."""


class PrecisionExhausted(RuntimeError):
    """Two enclosures still overlap at the top of the precision ladder."""
