"""Tokenizer and recursive-descent parser for the ASCII process syntax.

Binding tightness, tightest first: prefix ``.``, then the three choices
(``-``, ``+``, ``*{r}``, one shared level, left-associative), then
``||{A}`` (left-associative), then ``;`` (right-associative).
Parentheses override. A bare identifier parses as a process variable;
`parse_program` later rewrites the ones that match no definition into
action constants (``a`` meaning ``a.0``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DuplicateDefinition, LexError, ParseError, ValidationError
from .process import (
    INF,
    INF_KEYWORD,
    MAIN_NAME,
    NIL,
    DefinitionEnv,
    ExtChoice,
    IntChoice,
    Par,
    Prefix,
    ProbChoice,
    Process,
    Rate,
    Seq,
    Var,
)

IDENT = "IDENT"
NUMBER = "NUMBER"
INF_TOK = "INF"
ZERO = "ZERO"
DOT = "DOT"
SEMI = "SEMI"
MINUS = "MINUS"
PLUS = "PLUS"
STAR = "STAR"
LANGLE = "LANGLE"
RANGLE = "RANGLE"
COMMA = "COMMA"
LBRACE = "LBRACE"
RBRACE = "RBRACE"
LPAREN = "LPAREN"
RPAREN = "RPAREN"
PARBAR = "PARBAR"
EQUALS = "EQUALS"
EOF = "EOF"


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int
    column: int

    @property
    def position(self) -> tuple[int, int]:
        return (self.line, self.column)


_NUMBER_RE = re.compile(r"\d+(\.\d+)?([eE][+-]?\d+)?")
_IDENT_START_RE = re.compile(r"[A-Za-z_]")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

_SINGLE_CHAR = {
    ".": DOT,
    ";": SEMI,
    "-": MINUS,
    "+": PLUS,
    "*": STAR,
    "<": LANGLE,
    ">": RANGLE,
    ",": COMMA,
    "{": LBRACE,
    "}": RBRACE,
    "(": LPAREN,
    ")": RPAREN,
    "=": EQUALS,
}


def tokenize(source: str, first_line: int = 1) -> list[Token]:
    """Split ``source`` into tokens.

    Whitespace separates tokens and is otherwise ignored; ``#`` starts a
    comment running to end of line. ``||`` is one token, ``inf`` is the
    infinite-rate keyword, and a standalone ``0`` is ZERO (``0.5`` stays
    a NUMBER). Positions are 1-based; ``first_line`` numbers the first
    line, so callers tokenizing one line of a larger file keep accurate
    positions.
    """
    tokens: list[Token] = []
    line = first_line
    col = 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch == "|":
            if i + 1 < n and source[i + 1] == "|":
                tokens.append(Token(PARBAR, "||", line, col))
                i += 2
                col += 2
                continue
            raise LexError(line, col, ch)
        if ch.isdigit():
            m = _NUMBER_RE.match(source, i)
            text = m.group()
            kind = ZERO if text == "0" else NUMBER
            tokens.append(Token(kind, text, line, col))
            i = m.end()
            col += len(text)
            continue
        if _IDENT_START_RE.match(ch):
            m = _IDENT_RE.match(source, i)
            text = m.group()
            kind = INF_TOK if text == INF_KEYWORD else IDENT
            tokens.append(Token(kind, text, line, col))
            i = m.end()
            col += len(text)
            continue
        kind = _SINGLE_CHAR.get(ch)
        if kind is None:
            raise LexError(line, col, ch)
        tokens.append(Token(kind, ch, line, col))
        i += 1
        col += 1
    return tokens


class _Parser:
    """One pass over a token list; grammar, loosest rule first:

    seq    := par { ";" seq }
    par    := choice { "||" "{" [idlist] "}" choice }
    choice := prefix { ("-" | "+" | "*" "{" number "}") prefix }
    prefix := atom [ "." prefix ]
    atom   := "0" | IDENT | "<" IDENT "," (number | "inf") ">" | "(" seq ")"
    """

    def __init__(self, tokens: list[Token], first_line: int = 1):
        self.tokens = tokens
        self.pos = 0
        if tokens:
            last = tokens[-1]
            eof_line, eof_col = last.line, last.column + len(last.lexeme)
        else:
            eof_line, eof_col = first_line, 1
        self.eof = Token(EOF, "end of input", eof_line, eof_col)

    def peek(self) -> Token:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return self.eof

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, expected: str) -> ParseError:
        tok = self.peek()
        found = tok.lexeme if tok.kind == EOF else repr(tok.lexeme)
        return ParseError(tok.line, tok.column, expected, found)

    def expect(self, kind: str, expected: str) -> Token:
        if self.peek().kind != kind:
            raise self.fail(expected)
        return self.advance()

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    # entry points -----------------------------------------------------

    def parse_full_process(self) -> Process:
        p = self.parse_seq()
        if not self.at_end():
            raise self.fail("an operator or end of input")
        return p

    # one method per precedence level ----------------------------------

    def parse_seq(self) -> Process:
        left = self.parse_par()
        if self.peek().kind == SEMI:
            self.advance()
            return Seq(left, self.parse_seq())
        return left

    def parse_par(self) -> Process:
        left = self.parse_choice()
        while self.peek().kind == PARBAR:
            self.advance()
            self.expect(LBRACE, "'{' after '||'")
            names: list[str] = []
            if self.peek().kind == IDENT:
                names.append(self.advance().lexeme)
                while self.peek().kind == COMMA:
                    self.advance()
                    names.append(
                        self.expect(IDENT, "an action name").lexeme
                    )
            self.expect(RBRACE, "'}' closing the synchronization set")
            left = Par(frozenset(names), left, self.parse_choice())
        return left

    def parse_choice(self) -> Process:
        left = self.parse_prefix()
        while True:
            kind = self.peek().kind
            if kind == MINUS:
                self.advance()
                left = IntChoice(left, self.parse_prefix())
            elif kind == PLUS:
                self.advance()
                left = ExtChoice(left, self.parse_prefix())
            elif kind == STAR:
                self.advance()
                self.expect(LBRACE, "'{' after '*'")
                prob = self.parse_probability()
                self.expect(RBRACE, "'}' after the probability")
                left = ProbChoice(prob, left, self.parse_prefix())
            else:
                return left

    def parse_prefix(self) -> Process:
        tok = self.peek()
        if tok.kind == LANGLE:
            self.advance()
            action = self.expect(IDENT, "an action name").lexeme
            self.expect(COMMA, "',' between action and rate")
            rate = self.parse_rate()
            self.expect(RANGLE, "'>' closing the rated action")
            return Prefix(action, rate, self.parse_continuation())
        if tok.kind == IDENT:
            self.advance()
            if self.peek().kind == DOT:
                self.advance()
                return Prefix(tok.lexeme, INF, self.parse_prefix())
            # Bare name: a process variable for now; parse_program turns
            # the undefined ones into action constants.
            return Var(tok.lexeme)
        if tok.kind == ZERO:
            self.advance()
            return NIL
        if tok.kind == LPAREN:
            self.advance()
            inner = self.parse_seq()
            self.expect(RPAREN, "')'")
            return inner
        raise self.fail("a process")

    def parse_continuation(self) -> Process:
        """Continuation of a ``<a,r>`` atom: ``.P`` if a dot follows,
        otherwise the implicit ``0``."""
        if self.peek().kind == DOT:
            self.advance()
            return self.parse_prefix()
        return NIL

    # literals ---------------------------------------------------------

    def parse_rate(self) -> Rate:
        tok = self.peek()
        if tok.kind == INF_TOK:
            self.advance()
            return INF
        value = self.parse_number("a rate (positive number or 'inf')")
        if value <= 0.0:
            raise ValidationError(
                tok.line, tok.column, f"rate must be positive, got {tok.lexeme}"
            )
        return value

    def parse_probability(self) -> float:
        tok = self.peek()
        value = self.parse_number("a probability in [0,1]")
        if not (0.0 <= value <= 1.0):
            raise ValidationError(
                tok.line,
                tok.column,
                f"probability must lie in [0,1], got {tok.lexeme}",
            )
        return value

    def parse_number(self, expected: str) -> float:
        tok = self.peek()
        if tok.kind not in (NUMBER, ZERO):
            raise self.fail(expected)
        self.advance()
        return float(tok.lexeme)


def parse_process(tokens: list[Token]) -> Process:
    """Parse one complete process expression from ``tokens``."""
    return _Parser(tokens).parse_full_process()


def parse_process_text(source: str) -> Process:
    """Convenience wrapper: tokenize and parse a single expression."""
    return parse_process(tokenize(source))


def parse_program(source: str) -> DefinitionEnv:
    """Parse a whole program into a definition environment.

    Each non-empty, non-comment line is either ``NAME = PROCESS`` or a
    bare ``PROCESS``; a bare process is bound to ``main``. The root is
    ``main`` when that name exists, otherwise the last definition.
    Rebinding a name is an error. After all lines are read, bare
    identifiers that name no definition are rewritten into action
    constants (``f`` becomes ``f.0``); the rewrite runs last so forward
    references between definitions work.
    """
    bindings: dict[str, Process] = {}
    positions: dict[str, tuple[int, int]] = {}
    for lineno, text in enumerate(source.splitlines(), start=1):
        tokens = tokenize(text, first_line=lineno)
        if not tokens:
            continue
        if (
            len(tokens) >= 2
            and tokens[0].kind == IDENT
            and tokens[1].kind == EQUALS
        ):
            name_tok = tokens[0]
            name = name_tok.lexeme
            parser = _Parser(tokens[2:], first_line=lineno)
        else:
            name_tok = tokens[0]
            name = MAIN_NAME
            parser = _Parser(tokens, first_line=lineno)
        if name in bindings:
            raise DuplicateDefinition(name, name_tok.line, name_tok.column)
        bindings[name] = parser.parse_full_process()
        positions[name] = name_tok.position
    if not bindings:
        raise ParseError(1, 1, "at least one process definition", "end of input")
    defined = frozenset(bindings)
    bindings = {
        name: _close_free_names(body, defined)
        for name, body in bindings.items()
    }
    root = MAIN_NAME if MAIN_NAME in bindings else next(reversed(bindings))
    return DefinitionEnv(bindings=bindings, root=root)


def _close_free_names(p: Process, defined: frozenset[str]) -> Process:
    """Rewrite Var leaves naming no definition into action constants."""
    if isinstance(p, Var):
        return p if p.name in defined else Prefix(p.name, INF, NIL)
    if isinstance(p, Prefix):
        return Prefix(p.action, p.rate, _close_free_names(p.continuation, defined))
    if isinstance(p, Seq):
        return Seq(
            _close_free_names(p.left, defined),
            _close_free_names(p.right, defined),
        )
    if isinstance(p, IntChoice):
        return IntChoice(
            _close_free_names(p.left, defined),
            _close_free_names(p.right, defined),
        )
    if isinstance(p, ExtChoice):
        return ExtChoice(
            _close_free_names(p.left, defined),
            _close_free_names(p.right, defined),
        )
    if isinstance(p, ProbChoice):
        return ProbChoice(
            p.prob,
            _close_free_names(p.left, defined),
            _close_free_names(p.right, defined),
        )
    if isinstance(p, Par):
        return Par(
            p.sync,
            _close_free_names(p.left, defined),
            _close_free_names(p.right, defined),
        )
    return p
