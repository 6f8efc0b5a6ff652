class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ConsistencyError(RuntimeError):
    """A constructed object failed its own post-condition check."""


class BoxInstabilityError(RuntimeError):
    """Orbit counts changed when the enumeration box was enlarged."""
