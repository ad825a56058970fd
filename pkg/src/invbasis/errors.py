"""Exception hierarchy shared by the library and the CLI."""


class DomainError(ValueError):
    """A mathematically invalid request (non-unit inverse, bad dimensions, ...)."""


class NotAUnitError(DomainError):
    pass


class TruncationError(DomainError):
    """A decision depends on jet coefficients beyond the truncation order."""


class InsufficientTruncation(TruncationError):
    pass


class RankDeficientError(DomainError):
    pass


class NotInSpanError(DomainError):
    """The right-hand side is not in the column span over the fraction field."""


class NotInModule(DomainError):
    """The fraction-field solution has a non-polynomial coordinate."""

    def __init__(self, index, value):
        super().__init__(f"coordinate {index} is not a ring element: {value}")
        self.index = index
        self.value = value


class NotARootVector(DomainError):
    """Raised with ``reason`` in {"in_kernel_at_lambda", "annihilated"}."""

    def __init__(self, reason: str):
        super().__init__(f"not a root vector: {reason}")
        self.reason = reason


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text
