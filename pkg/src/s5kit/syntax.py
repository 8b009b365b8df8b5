"""Concrete syntax: a recursive-descent parser and a minimal-parenthesis printer.

Precedence, loosest first: ``->`` (right associative), ``~`` (40), ``box`` and
``dia`` (80).  Since implication is the only infix operator, the two prefix
levels never need parentheses between them, so ``box ~p`` and ``~box p`` both
parse without them.

Accepted spellings::

    ->  ⊃        ~  ∼        box  □        dia  ◇        false  bot  ⊥
    p0 p1 ...   p q r s  (= p0..p3)      # comment to end of line
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .formula import BOT, Atom, Box, Formula, Impl, dia, is_dia, is_neg, neg, required_sigma


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class SyntaxError_(Exception):
    """Base class for lexical and parse errors; always carries a span."""

    def __init__(self, message: str, span: SourceSpan, text: str = ""):
        super().__init__(message)
        self.message = message
        self.span = span
        self.text = text

    def __str__(self) -> str:
        return f"{self.message} at {self.span.start}..{self.span.end}"

    def caret(self) -> str:
        """Two-line rendering of the offending input with a marker below."""
        width = max(1, self.span.end - self.span.start)
        return f"{self.text}\n{' ' * self.span.start}{'^' * width}"


class LexError(SyntaxError_):
    pass


class ParseError(SyntaxError_):
    pass


class AtomRangeError(SyntaxError_):
    pass


LETTER_ATOMS = {"p": 0, "q": 1, "r": 2, "s": 3}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<arrow>->|⊃)
  | (?P<tilde>~|∼)
  | (?P<box>□)
  | (?P<dia>◇)
  | (?P<bot>⊥)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<comma>,)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_ATOM_RE = re.compile(r"p(0|[1-9][0-9]*)")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int
    atom: Optional[int] = None


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1), text)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "word":
            kind, atom = _classify_word(lexeme, m.start(), m.end(), text)
            tokens.append(Token(kind, lexeme, m.start(), m.end(), atom))
        elif kind != "ws":
            tokens.append(Token(kind, lexeme, m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("eof", "", len(text), len(text)))
    return tokens


def _classify_word(word: str, start: int, end: int, text: str) -> tuple[str, Optional[int]]:
    if word == "box":
        return "box", None
    if word == "dia":
        return "dia", None
    if word in ("false", "bot"):
        return "bot", None
    if word in LETTER_ATOMS:
        return "atom", LETTER_ATOMS[word]
    m = _ATOM_RE.fullmatch(word)
    if m:
        return "atom", int(m.group(1))
    raise LexError(f"unknown token {word!r}", SourceSpan(start, end), text)


class _Parser:
    def __init__(self, text: str, sigma: Optional[int]):
        self.text = text
        self.sigma = sigma
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, SourceSpan(tok.start, max(tok.end, tok.start)), self.text)

    def expect(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise self.fail(f"expected {what}, found {found}")
        return self.advance()

    def formula(self) -> Formula:
        lhs = self.prefix()
        if self.tok.kind == "arrow":
            self.advance()
            return Impl(lhs, self.formula())
        return lhs

    def prefix(self) -> Formula:
        kind = self.tok.kind
        if kind == "tilde":
            self.advance()
            return neg(self.prefix())
        if kind == "box":
            self.advance()
            return Box(self.prefix())
        if kind == "dia":
            self.advance()
            return dia(self.prefix())
        return self.atomexpr()

    def atomexpr(self) -> Formula:
        tok = self.tok
        if tok.kind == "atom":
            self.advance()
            if self.sigma is not None and tok.atom >= self.sigma:
                raise AtomRangeError(
                    f"atom {tok.text} out of range for sigma={self.sigma}",
                    SourceSpan(tok.start, tok.end),
                    self.text,
                )
            return Atom(tok.atom)
        if tok.kind == "bot":
            self.advance()
            return BOT
        if tok.kind == "lpar":
            self.advance()
            inner = self.formula()
            self.expect("rpar", "')'")
            return inner
        if tok.kind == "eof":
            raise self.fail("unexpected end of input, expected a formula")
        raise self.fail(f"unexpected {tok.text!r}, expected a formula")


def parse(text: str, sigma: Optional[int] = None) -> Formula:
    """Parse one formula.  ``sigma=None`` means the signature is inferred."""
    p = _Parser(text, sigma)
    result = p.formula()
    if p.tok.kind != "eof":
        raise p.fail(f"trailing input starting at {p.tok.text!r}")
    return result


def parse_list(text: str, sigma: Optional[int] = None) -> list[Formula]:
    """Comma-separated formulas; empty or blank text (or ``·``) gives ``[]``."""
    if text.strip() in ("", "·", "."):
        return []
    p = _Parser(text, sigma)
    out = [p.formula()]
    while p.tok.kind == "comma":
        p.advance()
        out.append(p.formula())
    if p.tok.kind != "eof":
        raise p.fail(f"expected ',' or end of input, found {p.tok.text!r}")
    return out


def infer_sigma(formulas) -> int:
    return required_sigma(formulas)


# -- printing ---------------------------------------------------------------


def pretty(p: Formula, sugar: bool = True) -> str:
    """ASCII rendering with the fewest parentheses that still reparse to ``p``.

    With ``sugar=False`` the Neg/Dia shapes are spelled out as implications
    and boxes, which shows the tree exactly as stored.
    """
    return _render(p, sugar, top=True)


def _render(p: Formula, sugar: bool, top: bool) -> str:
    if isinstance(p, Atom):
        return f"p{p.index}"
    if p == BOT:
        return "false"
    if isinstance(p, Box):
        return "box " + _render(p.body, sugar, top=False)
    if sugar and is_dia(p):
        return "dia " + _render(p.lhs.body.lhs, sugar, top=False)
    if sugar and is_neg(p):
        return "~" + _render(p.lhs, sugar, top=False)
    # implication
    lhs = _render(p.lhs, sugar, top=False)
    rhs = _render(p.rhs, sugar, top=True)
    text = f"{lhs} -> {rhs}"
    return text if top else f"({text})"

