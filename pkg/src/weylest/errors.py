"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class PrecisionError(ValueError):
    """The requested precision cannot guarantee a correctly rounded result."""


class EstimateUndefinedError(ArithmeticError):
    """The estimator's defining formula diverges or is undefined on this input.

    Raised instead of clamping: a clamp would fabricate a finite estimate
    where the formula has none.
    """


class ConfigError(ValueError):
    """An experiment configuration violates its invariants."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
