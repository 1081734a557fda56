"""Exception types shared across the package."""

from __future__ import annotations


class GraphFormatError(ValueError):
    """A graph description document violates the text format."""

    def __init__(self, message: str, line: int | None = None, token: str | None = None):
        self.line = line
        self.token = token
        where = f" (line {line}" + (f", token {token!r})" if token else ")") if line else ""
        super().__init__(message + where)


class RelationFormatError(ValueError):
    """A relation CSV document is malformed."""


class HcgFormatError(ValueError):
    """A tree-decomposition document is malformed."""


class PreconditionError(ValueError):
    """An operation was called outside its stated contract."""


class BudgetExceededError(RuntimeError):
    """An enumeration exceeded its configured budget; never silently truncated."""


class InvariantViolationError(RuntimeError):
    """A construction reached a state its supporting theory rules out; a bug trap."""
