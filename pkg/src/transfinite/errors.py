"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(RuntimeError):
    """A configured size cap was exceeded."""


class ContractError(ValueError):
    """A caller-supplied object violates a documented contract."""


class ParseError(ValueError):
    """Malformed literal text.  ``position`` is a 0-based character offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")
