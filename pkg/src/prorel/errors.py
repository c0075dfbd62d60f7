"""Exception types shared across the package."""


class InvalidParameter(ValueError):
    """A parameter lies outside the documented domain of an operation."""


class DomainError(ValueError):
    """An input lies outside the region where an identity or series is valid."""


class HypothesisViolation(ValueError):
    """A relation shape or parameter set fails a theorem's hypotheses."""


class MembershipError(ValueError):
    """An element does not belong to the subgroup it was claimed to lie in."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured element bound."""

    def __init__(self, bound: int, what: str = "subgroup closure"):
        super().__init__(f"{what} exceeded max_order={bound}")
        self.bound = bound


class ParseError(ValueError):
    """Syntax error in the relation mini-language."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos
