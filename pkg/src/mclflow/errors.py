"""Exception hierarchy shared by the mclflow modules."""


class MclflowError(Exception):
    """Base class for all package errors."""


class GraphFormatError(MclflowError, ValueError):
    """An input file could not be parsed.

    ``line`` carries the 1-based line number when the failure is tied to a row.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphValidationError(MclflowError, ValueError):
    """Parsed data violates a graph invariant (e.g. non-positive weight)."""


class ParameterError(MclflowError, ValueError):
    """An algorithm parameter is outside its admissible range."""


class DunnUndefinedError(MclflowError, ValueError):
    """The Dunn index needs at least two clusters."""
