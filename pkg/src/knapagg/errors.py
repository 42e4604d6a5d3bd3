"""Exception types shared across the package."""


class KnapaggError(Exception):
    """Base class for every error raised by this package."""


class ParseError(KnapaggError):
    """Input text is not a well-formed instance document."""


class ValidationError(KnapaggError):
    """Structurally well-formed input violates an instance invariant."""


class DimensionMismatch(ValidationError):
    """A vector's length does not match the instance it is used with."""


class UnboundedProblem(KnapaggError):
    """The objective can be pushed to minus infinity over the feasible set."""


class CapExceeded(KnapaggError):
    """An enumeration grew past its configured point cap."""


class IterationLimit(KnapaggError):
    """The exact pivoting routine hit its iteration cap before deciding."""
