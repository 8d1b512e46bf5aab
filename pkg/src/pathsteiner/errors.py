"""Exception hierarchy shared by the library and the CLI.

Each class carries the CLI exit code it maps to.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    exit_code = 2


class RangeError(WorkbenchError, IndexError):
    """A vertex or node id outside the valid range."""


class InstanceError(WorkbenchError, ValueError):
    """Input violates a structural precondition (disconnected, malformed, ...)."""


class ParseError(InstanceError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeError(WorkbenchError):
    """Instance exceeds a configured exhaustive-search cap."""

    exit_code = 3


class ClassError(WorkbenchError):
    """Instance is outside the graph class an algorithm is valid for."""

    exit_code = 3


class ContractError(WorkbenchError):
    """Precondition of an internal pipeline stage does not hold."""


class IntegrityError(WorkbenchError):
    """A computed answer failed its own re-verification."""

    exit_code = 1
