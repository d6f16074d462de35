"""Shared lexer skeleton for the textual dialects.

Hand-rolled so every token carries an exact 1-based line/column and parse
errors can quote the offending source line.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError


@dataclass(frozen=True)
class Token:
    kind: str  # ID, NUMBER, STRING, PUNCT, EOF
    text: str
    line: int
    column: int


class Lexer:
    """Tokenizer over identifiers, numbers, strings and one-or-two char
    punctuation. Comment syntax and identifier charset vary per dialect."""

    def __init__(
        self,
        source: str,
        *,
        dialect: str,
        line_comment: str = "//",
        punct_two: tuple[str, ...] = (),
        punct_one: str = "",
        id_start: str = "",
        id_more: str = "",
    ):
        self.source = source
        self.lines = source.splitlines()
        self.dialect = dialect
        self._comment = line_comment
        self._two = punct_two
        self._one = set(punct_one)
        self._id_start = id_start
        self._id_more = id_more
        self._pos = 0
        self._line = 1
        self._col = 1

    def error(self, message: str, line: int | None = None, column: int | None = None):
        line = self._line if line is None else line
        column = self._col if column is None else column
        snippet = self.lines[line - 1] if 0 < line <= len(self.lines) else ""
        raise ParseError(
            message, line=line, column=column, snippet=snippet, dialect=self.dialect
        )

    def snippet(self, line: int) -> str:
        return self.lines[line - 1] if 0 < line <= len(self.lines) else ""

    def _peek_char(self, k: int = 0) -> str:
        i = self._pos + k
        return self.source[i] if i < len(self.source) else ""

    def _advance(self, k: int = 1) -> None:
        for _ in range(k):
            if self._pos >= len(self.source):
                return
            if self.source[self._pos] == "\n":
                self._line += 1
                self._col = 1
            else:
                self._col += 1
            self._pos += 1

    def _skip_trivia(self) -> None:
        while True:
            ch = self._peek_char()
            if ch in (" ", "\t", "\r", "\n"):
                self._advance()
                continue
            if self._comment and self.source.startswith(self._comment, self._pos):
                while self._peek_char() not in ("", "\n"):
                    self._advance()
                continue
            return

    def next_token(self) -> Token:
        self._skip_trivia()
        line, col = self._line, self._col
        ch = self._peek_char()
        if ch == "":
            return Token("EOF", "", line, col)
        if ch.isdigit() or (ch == "." and self._peek_char(1).isdigit()):
            return self._lex_number(line, col)
        if ch in self._id_start or ch.isalpha() or ch == "_":
            text = ""
            while True:
                c = self._peek_char()
                if c and (c.isalnum() or c == "_" or c in self._id_more):
                    text += c
                    self._advance()
                else:
                    break
            return Token("ID", text, line, col)
        if ch == '"':
            self._advance()
            text = ""
            while True:
                c = self._peek_char()
                if c == "":
                    self.error("unterminated string literal", line, col)
                if c == '"':
                    self._advance()
                    return Token("STRING", text, line, col)
                if c == "\n":
                    self.error("unterminated string literal", line, col)
                text += c
                self._advance()
        for two in self._two:
            if self.source.startswith(two, self._pos):
                self._advance(2)
                return Token("PUNCT", two, line, col)
        if ch in self._one:
            self._advance()
            return Token("PUNCT", ch, line, col)
        self.error(f"unexpected character {ch!r}")
        raise AssertionError  # pragma: no cover

    def _lex_number(self, line: int, col: int) -> Token:
        text = ""
        seen_dot = seen_exp = False
        while True:
            c = self._peek_char()
            if c.isdigit():
                text += c
            elif c == "." and not seen_dot and not seen_exp:
                seen_dot = True
                text += c
            elif c in "eE" and not seen_exp and text and text[-1].isdigit():
                nxt = self._peek_char(1)
                if nxt.isdigit() or (
                    nxt in "+-" and self._peek_char(2).isdigit()
                ):
                    seen_exp = True
                    text += c
                    self._advance()
                    if self._peek_char() in "+-":
                        text += self._peek_char()
                        self._advance()
                    continue
                break
            else:
                break
            self._advance()
        return Token("NUMBER", text, line, col)


class TokenStream:
    def __init__(self, lexer: Lexer):
        self._lexer = lexer
        self._pending: list[Token] = []

    def peek(self, k: int = 0) -> Token:
        while len(self._pending) <= k:
            self._pending.append(self._lexer.next_token())
        return self._pending[k]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "EOF":
            self._pending.pop(0)
        return tok

    def error_at(self, tok: Token, message: str):
        self._lexer.error(message, tok.line, tok.column)

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            got = tok.text if tok.text else "end of input"
            self.error_at(tok, f"expected {want!r}, found {got!r}")
        return self.next()

    def match(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            self.next()
            return True
        return False
