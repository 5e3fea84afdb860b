"""Exception hierarchy shared by every lfpsat module."""

from __future__ import annotations


class LfpError(Exception):
    """Base class for all library errors."""


class RepresentationError(LfpError, ValueError):
    """A value is not a well-formed element or subset for its carrier."""


class ConfigurationError(LfpError, ValueError):
    """A structure was assembled from inconsistent parameters."""


class ContractError(LfpError):
    """A precondition of an operation does not hold."""


class MonotonicityError(ContractError):
    """A map claimed to be monotone is not."""

    def __init__(self, message: str, witness: tuple | None = None) -> None:
        super().__init__(message)
        self.witness = witness


class DensityError(ContractError):
    """A map is not dense with respect to the supplied family."""


class UnboundedGeneratorError(LfpError):
    """The saturation engine was handed a generator without a bound."""


class GuardError(LfpError):
    """A size guard of an exhaustive procedure was exceeded."""


class ParseError(LfpError):
    """A problem file could not be parsed."""

    def __init__(self, message: str, line: int, column: int, path: str = "<input>") -> None:
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.path = path
        self.line = line
        self.column = column
        self.reason = message
