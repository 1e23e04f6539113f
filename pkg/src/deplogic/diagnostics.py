"""Source text wrappers and diagnostics shared by the parsers and the
proof kernel."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourceText:
    text: str
    origin: str = "<inline>"

    @staticmethod
    def inline(text: str) -> "SourceText":
        return SourceText(text, "<inline>")


@dataclass(frozen=True)
class Span:
    """1-based line, 0-based column range within a SourceText."""

    line: int
    col_start: int
    col_end: int


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str
    span: Optional[Span] = None

    def __str__(self) -> str:
        where = f"{self.span.line}:{self.span.col_start}: " if self.span else ""
        return f"{where}{self.severity}: {self.message}"


class ParseError(Exception):
    """Raised by the parsers; carries a Diagnostic with a source span."""

    def __init__(self, diagnostic: Diagnostic) -> None:
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


def error_at(message: str, line: int, col_start: int, col_end: int) -> ParseError:
    return ParseError(Diagnostic("error", message, Span(line, col_start, col_end)))
