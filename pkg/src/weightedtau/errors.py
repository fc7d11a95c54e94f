"""Exception hierarchy shared by the library and the command-line tool."""


class WeightedTauError(Exception):
    """Base class for all errors raised by :mod:`weightedtau`."""


class ParseError(WeightedTauError, ValueError):
    """A line of an input file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(WeightedTauError, ValueError):
    """Input is well-formed but outside the domain of the operation."""


class TiesError(DomainError):
    """A tie-free operation received a vector containing ties."""


class LengthMismatchError(WeightedTauError, ValueError):
    """Two vectors that must be index-aligned have different lengths."""


class UndefinedCorrelationError(WeightedTauError, ArithmeticError):
    """The requested correlation has a zero denominator."""
