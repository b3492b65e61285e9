"""Exception types raised across the package."""

from __future__ import annotations


class GraphError(Exception):
    """Base class; ``name`` is the stable identifier used by the CLI."""

    name = "graph-error"


class DomainError(GraphError, ValueError):
    name = "domain-error"


class ConvergenceError(GraphError, ArithmeticError):
    name = "convergence-failure"


class DegenerateSpectrumError(GraphError, ValueError):
    name = "degenerate-spectrum"


class EnvelopeExceeded(GraphError):
    name = "envelope-exceeded"


class InsufficientPoints(GraphError, ValueError):
    name = "insufficient-points"


class ParseError(GraphError, ValueError):
    name = "parse-error"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateEdgeError(ParseError):
    name = "duplicate-edge"


class IndexOutOfRange(ParseError):
    name = "index-out-of-range"


class Graph6Error(ParseError):
    name = "graph6-error"


class BadLength(Graph6Error):
    name = "bad-length"


class BadByte(Graph6Error):
    name = "bad-byte"
