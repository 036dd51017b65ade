"""Expression grammar shared by the CLI, scenario files, and printers.

    expr     := sign? term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := atom ("^" uint)?
    atom     := generator | rational | "(" expr ")"
    rational := sign? uint ("/" uint)?

Operator expressions use the generators z<i> and d<i>; symbol polynomials use
z<i> and zeta<i> (d<i> is accepted as a synonym for zeta<i> so operator
generators can be reread as their symbols).  Factors multiply left to right,
which is the only order that matters once d and z stop commuting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Poly, poly_z, poly_zeta
from .weyl import WeylElement, d, z

MAX_EXPONENT = 10**6


class ParseError(ValueError):
    """Syntax or range error, carrying the 0-based offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


@dataclass(frozen=True)
class _Token:
    kind: str  # "gen", "num", or a literal symbol
    position: int
    name: str = ""
    index: int = 0
    value: int = 0


_SYMBOLS = set("+-*/^()")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, i))
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(_Token("num", start, value=int(text[start:i])))
            continue
        if ch.isalpha():
            start = i
            while i < n and text[i].isalpha():
                i += 1
            name = text[start:i]
            if name not in ("z", "d", "zeta"):
                raise ParseError(f"unknown name {name!r}", start)
            if i >= n or not text[i].isdigit():
                raise ParseError(f"expected variable index after {name!r}", i)
            digits_start = i
            while i < n and text[i].isdigit():
                i += 1
            index = int(text[digits_start:i])
            if index < 1:
                raise ParseError(f"variable index must be positive, got {index}", digits_start)
            tokens.append(_Token("gen", start, name=name, index=index))
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    """Recursive-descent parser producing elements of a chosen ring."""

    def __init__(self, tokens: Sequence[_Token], ambient: int, end: int, symbols: bool):
        self.tokens = tokens
        self.pos = 0
        self.ambient = ambient
        self.end = end  # position just past the input, for EOF errors
        self.symbols = symbols
        self.element_type = Poly if symbols else WeylElement

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, got {tok.kind!r}", tok.position)
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok.kind!r}", tok.position)
        return value

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok is not None and tok.kind in ("+", "-"):
            self.next()
            sign = -1 if tok.kind == "-" else 1
        value = self.term().scaled(sign)
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in ("+", "-"):
                return value
            self.next()
            rhs = self.term()
            value = value + rhs if tok.kind == "+" else value - rhs

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "*":
                return value
            self.next()
            value = value * self.factor()

    def factor(self):
        value = self.atom()
        tok = self.peek()
        if tok is not None and tok.kind == "^":
            self.next()
            exponent = self.uint()
            value = value**exponent
        return value

    def uint(self) -> int:
        tok = self.expect("num")
        if tok.value > MAX_EXPONENT:
            raise ParseError(
                f"exponent {tok.value} exceeds limit {MAX_EXPONENT}", tok.position
            )
        return tok.value

    def atom(self):
        tok = self.next()
        if tok.kind == "gen":
            return self.generator(tok)
        if tok.kind == "num":
            return self.element_type.constant(self.rational(tok), self.ambient)
        if tok.kind == "-":
            inner = self.expect("num")
            return self.element_type.constant(-self.rational(inner), self.ambient)
        if tok.kind == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {tok.kind!r}", tok.position)

    def rational(self, tok: _Token) -> Fraction:
        numerator = tok.value
        nxt = self.peek()
        if nxt is not None and nxt.kind == "/":
            self.next()
            denom_tok = self.expect("num")
            if denom_tok.value == 0:
                raise ParseError("zero denominator", denom_tok.position)
            return Fraction(numerator, denom_tok.value)
        return Fraction(numerator)

    def generator(self, tok: _Token):
        if tok.index > self.ambient:
            raise ParseError(
                f"variable index {tok.index} out of range 1..{self.ambient}",
                tok.position,
            )
        if self.symbols:
            if tok.name == "z":
                return poly_z(tok.index, self.ambient)
            return poly_zeta(tok.index, self.ambient)
        if tok.name == "zeta":
            raise ParseError("zeta is only valid in symbol polynomials", tok.position)
        if tok.name == "z":
            return z(tok.index, self.ambient)
        return d(tok.index, self.ambient)


def _prepare(text: str, ambient: int | None) -> tuple[list[_Token], int]:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 0)
    if ambient is None:
        ambient = max((t.index for t in tokens if t.kind == "gen"), default=0)
    elif ambient < 0:
        raise ValueError("ambient must be nonnegative")
    return tokens, ambient


def parse_expression(text: str, ambient: int | None = None) -> WeylElement:
    """Parse an operator expression; infers the ambient size when omitted."""
    tokens, m = _prepare(text, ambient)
    return _Parser(tokens, m, len(text), symbols=False).parse()


def parse_polynomial(text: str, ambient: int | None = None) -> Poly:
    """Parse a commutative polynomial in z and zeta (d doubles as zeta)."""
    tokens, m = _prepare(text, ambient)
    return _Parser(tokens, m, len(text), symbols=True).parse()
