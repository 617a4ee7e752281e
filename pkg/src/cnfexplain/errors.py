"""Shared exception types."""

from __future__ import annotations


class ContradictionError(ValueError):
    """An input required to be satisfiable turned out unsatisfiable."""


class SolveTimeout(RuntimeError):
    """A resource limit was hit; distinguishable from an UNSAT answer."""


class ParseError(ValueError):
    """Malformed instance or grid file."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line = line
        self.column = column
