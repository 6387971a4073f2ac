"""Errors raised by the borgia toolkit.

Every error carries a stable ``code`` so the command line front end can report
failures as a single machine-parseable line.
"""

from typing import Any, Dict, Optional

# code of failures that are not toolkit errors
INTERNAL_ERROR_CODE = "E_INTERNAL"


class BorgiaError(Exception):
    """Base class of all the toolkit errors.

    Attributes:
        code: machine-parseable error code.
    """

    code = "E_BORGIA"

    def __init__(self, message: str, **details: Any) -> None:
        """Initializes the error.

        Args:
            message: human readable description of the error.
            details: additional diagnostic values attached to the error.
        """
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def one_line(self) -> str:
        """Formats the error as a single line.

        Returns:
            line in the form ``error[CODE]: message``.
        """
        message = " ".join(self.message.split())
        return f"error[{self.code}]: {message}"


class GraphFormatError(BorgiaError, ValueError):
    """Malformed graph input, located by line and/or field."""

    code = "E_PARSE"

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        field: Optional[str] = None,
        **details: Any,
    ) -> None:
        """Initializes the error.

        Args:
            message: description of the problem.
            line: 1-based line number of the offending record. Defaults to None.
            field: name of the offending field. Defaults to None.
        """
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        if location:
            message = f"{message} at {', '.join(location)}"
        super().__init__(message, **details)
        self.line = line
        self.field = field


class InvalidGraphError(BorgiaError, ValueError):
    """A graph violating the structural invariants."""

    code = "E_GRAPH"


class DimensionMismatchError(BorgiaError, ValueError):
    """Matrices or graphs with incompatible sizes."""

    code = "E_DIM"


class ConfigurationError(BorgiaError, ValueError):
    """Parameters outside of their admitted ranges or unknown names."""

    code = "E_CONFIG"


class ActorMismatchError(BorgiaError, ValueError):
    """Partitions or datasets defined over different actor sets."""

    code = "E_ACTORS"


class DatasetNotFoundError(BorgiaError, FileNotFoundError):
    """A requested dataset (or one of its files) is not available."""

    code = "E_DATASET"


class SimulationStallError(BorgiaError, RuntimeError):
    """The clustering simulation cannot make progress."""

    code = "E_STALL"
