"""Exception types shared across the package."""

from __future__ import annotations


class GeodexError(Exception):
    """Base class for all package errors."""


class InvalidVertexError(GeodexError, ValueError):
    def __init__(self, vertex: int, n: int) -> None:
        super().__init__(f"vertex {vertex} out of range for order {n}")
        self.vertex = vertex
        self.n = n


class PreconditionError(GeodexError, ValueError):
    """An operation was called on input outside its contract."""


class NotGeodeticError(PreconditionError):
    """Raised where a k-geodetic input is required; carries the witness."""

    def __init__(self, witness, k: int) -> None:
        super().__init__(
            f"digraph is not {k}-geodetic: walks {list(witness.walk_a)} and "
            f"{list(witness.walk_b)} both run from {witness.source} to {witness.target}"
        )
        self.witness = witness
        self.k = k


class OrderGuardError(GeodexError, ValueError):
    """Requested search order exceeds the configured guard."""


class ParseError(GeodexError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
