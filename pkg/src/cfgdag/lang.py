"""Tokenizer, AST, and parser for a small structured language.

Statements: labelled assignments ("x;"), if/else, while, do-while, break,
continue, and return. Blocks use braces, simple statements end with ";",
comments run from "//" to end of line. Loop conditions are identifiers or
integer literals (nonzero spins forever, zero never enters the body).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class ParseError(ValueError):
    """Malformed source; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


@dataclass
class Assign:
    label: str
    nid: int = -1


@dataclass
class Sequence:
    body: list = field(default_factory=list)
    nid: int = -1


@dataclass
class If:
    cond: str
    then: Sequence
    orelse: Sequence | None = None
    nid: int = -1


@dataclass
class While:
    cond: str | int
    body: Sequence = None  # type: ignore[assignment]
    nid: int = -1


@dataclass
class DoWhile:
    cond: str | int
    body: Sequence = None  # type: ignore[assignment]
    nid: int = -1


@dataclass
class Break:
    nid: int = -1


@dataclass
class Continue:
    nid: int = -1


@dataclass
class Return:
    nid: int = -1


Statement = Assign | Sequence | If | While | DoWhile | Break | Continue | Return


@dataclass
class StructuredAst:
    root: Sequence


KEYWORDS = frozenset({"if", "else", "while", "do", "break", "continue", "return"})

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<comment>//[^\n]*)"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_]\w*)"
    r"|(?P<lbrace>\{)"
    r"|(?P<rbrace>\})"
    r"|(?P<semi>;)"
)


def tokenize(source: str) -> list[tuple[str, str, int, int]]:
    """Return (kind, text, line, col) tokens; keywords use their own kind."""
    tokens = []
    pos, line, col = 0, 1, 1
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "ident" and text in KEYWORDS:
            kind = text
        if kind not in ("ws", "comment"):
            tokens.append((kind, text, line, col))
        nl = text.count("\n")
        if nl:
            line += nl
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.next_id = 0
        self.loop_depth = 0

    def _take_id(self) -> int:
        nid = self.next_id
        self.next_id += 1
        return nid

    def _cur(self):
        return self.tokens[self.pos]

    def _advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, kind: str, what: str):
        tok = self._cur()
        if tok[0] != kind:
            raise ParseError(f"expected {what}, found {tok[1] or 'end of input'!r}", tok[2], tok[3])
        return self._advance()

    def _error(self, message: str):
        tok = self._cur()
        raise ParseError(message, tok[2], tok[3])

    def program(self) -> Sequence:
        root = Sequence(nid=self._take_id())
        while self._cur()[0] != "eof":
            root.body.append(self.statement())
        return root

    def block(self) -> Sequence:
        nid = self._take_id()
        self._expect("lbrace", "'{'")
        seq = Sequence(nid=nid)
        while self._cur()[0] != "rbrace":
            if self._cur()[0] == "eof":
                self._error("unterminated block")
            seq.body.append(self.statement())
        self._advance()
        return seq

    def condition(self) -> str | int:
        tok = self._cur()
        if tok[0] == "ident":
            self._advance()
            return tok[1]
        if tok[0] == "int":
            self._advance()
            return int(tok[1])
        self._error("expected a condition label")
        raise AssertionError  # unreachable

    def statement(self):
        kind, text, line, col = self._cur()
        if kind == "ident":
            nid = self._take_id()
            self._advance()
            self._expect("semi", "';'")
            return Assign(text, nid=nid)
        if kind == "if":
            nid = self._take_id()
            self._advance()
            cond = self.condition()
            if isinstance(cond, int):
                self._error("if conditions must be labels")
            then = self.block()
            orelse = None
            if self._cur()[0] == "else":
                self._advance()
                orelse = self.block()
            return If(cond, then, orelse, nid=nid)
        if kind == "while":
            nid = self._take_id()
            self._advance()
            cond = self.condition()
            self.loop_depth += 1
            body = self.block()
            self.loop_depth -= 1
            return While(cond, body, nid=nid)
        if kind == "do":
            nid = self._take_id()
            self._advance()
            self.loop_depth += 1
            body = self.block()
            self.loop_depth -= 1
            self._expect("while", "'while'")
            cond = self.condition()
            self._expect("semi", "';'")
            return DoWhile(cond, body, nid=nid)
        if kind == "break":
            if self.loop_depth == 0:
                self._error("break outside loop")
            nid = self._take_id()
            self._advance()
            self._expect("semi", "';'")
            return Break(nid=nid)
        if kind == "continue":
            if self.loop_depth == 0:
                self._error("continue outside loop")
            nid = self._take_id()
            self._advance()
            self._expect("semi", "';'")
            return Continue(nid=nid)
        if kind == "return":
            nid = self._take_id()
            self._advance()
            self._expect("semi", "';'")
            return Return(nid=nid)
        self._error(f"unexpected {text!r}")


def parse_program(source: str) -> StructuredAst:
    """Parse source text into an AST; node ids follow source order."""
    return StructuredAst(root=_Parser(tokenize(source)).program())
