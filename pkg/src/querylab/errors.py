"""Error types shared across the query pipeline.

Every user-facing failure is a ``QueryError`` carrying an optional 1-based
(line, column) position and a ``kind`` tag ("lex", "parse" or "bind") that
the HTTP service and the CLI use to classify the failure.
"""

from __future__ import annotations

Position = tuple[int, int]


class QueryError(Exception):
    """Base class for errors caused by the user's query text."""

    kind = "error"

    def __init__(self, message: str, position: Position | None = None):
        super().__init__(message)
        self.message = message
        self.position = position

    def __str__(self) -> str:
        if self.position is not None:
            line, column = self.position
            return f"{self.message} (line {line}, column {column})"
        return self.message


class LexError(QueryError):
    kind = "lex"


class ParseError(QueryError):
    kind = "parse"

    def __init__(self, position: Position | None, expected: str, found: str):
        super().__init__(f"expected {expected}, found {found}", position)
        self.expected = expected
        self.found = found


class BindError(QueryError):
    """Name resolution or type checking failed."""

    kind = "bind"


class UnknownRelation(BindError):
    pass


class UnknownColumn(BindError):
    pass


class AmbiguousColumn(BindError):
    pass


class DuplicateQualifier(BindError):
    pass


class TypeMismatch(BindError):
    pass


class InvalidPath(Exception):
    """A node path does not address any node of the expression.

    Not a QueryError: paths come from API callers, not from query text.
    """
