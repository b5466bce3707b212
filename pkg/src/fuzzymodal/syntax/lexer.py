from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..core.errors import FuzzyModalError


@dataclass(frozen=True)
class SourceSpan:
    begin: int
    end: int
    line: int
    column: int

    def __post_init__(self):
        if self.begin > self.end:
            raise ValueError("span begin after end")

    @classmethod
    def at(cls, text: str, begin: int, end: int | None = None) -> "SourceSpan":
        end = begin if end is None else end
        line = text.count("\n", 0, begin) + 1
        column = begin - (text.rfind("\n", 0, begin) + 1) + 1
        return cls(begin, end, line, column)


class ParseError(FuzzyModalError):
    def __init__(self, message: str, span: SourceSpan, expected: frozenset[str] | set[str] = frozenset()):
        if not message:
            raise ValueError("parse error message must be non-empty")
        self.message = message
        self.span = span
        self.expected = frozenset(expected)
        super().__init__(f"{span.line}:{span.column}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    begin: int
    end: int = field(compare=False)


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+/\d+|\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>->|<>|\[\]|\.-|[~&|()\[\],=.])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan.at(text, pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            tokens.append(Token(tok if kind == "op" else kind, tok, m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("eof", "", len(text), len(text)))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.peek().kind == kind:
            return self.next()
        return None

    def expect(self, kind: str, message: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(message or f"expected {kind!r}, found {found}", tok, {kind})
        return self.next()

    def error(self, message: str, tok: Token, expected=frozenset()) -> ParseError:
        return ParseError(message, SourceSpan.at(self.text, tok.begin, tok.end), expected)
