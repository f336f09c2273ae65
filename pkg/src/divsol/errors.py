"""Exception hierarchy shared by every solver."""

from __future__ import annotations


class DivsolError(Exception):
    """Base class for all library errors."""


class InvalidInputError(DivsolError, ValueError):
    """Malformed instance data or arguments outside their documented range."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleError(DivsolError):
    """The instance admits no answer (for example fewer than k feasible solutions)."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class ResourceError(DivsolError):
    """An exhaustive routine would exceed its configured budget."""


class ContractViolation(DivsolError):
    """A user-supplied oracle broke its documented contract."""
