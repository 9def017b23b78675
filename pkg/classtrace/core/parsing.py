"""
Text input for field elements, polynomials and classes.

Grammar (whitespace ignored):

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (['*'] power)*
    power  := atom ['^' integer]
    atom   := integer | 'x' | 'g' | '(' expr ')' | '[' integer (',' integer)* ']'

Integers are reduced mod p. `g` is the class of x modulo the field modulus and
is rejected over prime fields; `[c0,c1,...]` is an element given by its
coefficients over GF(p). A class is a comma-separated list of monic invariant
factors with an optional "@label=theta" suffix for SL classes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Literal

import galois

from ..exceptions import ClassError, FieldError, ParseError
from .classes import ClassHandle, Group, SimilarityClass, SLClass
from .field import FieldCtx, FieldElement
from .polynomials import constant, is_zero, poly_asc, x_poly

TokenKind = Literal["int", "x", "g", "op", "(", ")", "[", "]", ",", "end"]

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([xg])|(\^|\*|\+|-)|([()\[\],]))")


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN_RE.match(stripped, pos)
        if match is None or match.end() == pos:
            raise ParseError(
                f"Unexpected character at position {pos}", details={"text": text, "pos": pos}
            )
        number, symbol, op, bracket = match.groups()
        start = match.start(match.lastindex or 0)
        if number is not None:
            tokens.append(Token("int", number, start))
        elif symbol is not None:
            tokens.append(Token(symbol, symbol, start))  # type: ignore[arg-type]
        elif op is not None:
            tokens.append(Token("op", op, start))
        else:
            tokens.append(Token(bracket, bracket, start))  # type: ignore[arg-type]
        pos = match.end()
    tokens.append(Token("end", "", len(stripped)))
    return tokens


class _Parser:
    """Recursive-descent parser producing galois.Poly values over the field."""

    def __init__(self, field: FieldCtx, text: str, *, allow_x: bool):
        self.field = field
        self.text = text
        self.allow_x = allow_x
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def fail(self, message: str) -> ParseError:
        return ParseError(message, details={"text": self.text, "pos": self.current.pos})

    def expect(self, kind: TokenKind, text: str | None = None) -> Token:
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            raise self.fail(f"Expected '{text or kind}'")
        return self.advance()

    def parse(self) -> galois.Poly:
        if self.current.kind == "end":
            raise self.fail("Empty expression")
        value = self.expr()
        if self.current.kind != "end":
            raise self.fail(f"Unexpected '{self.current.text}'")
        return value

    def expr(self) -> galois.Poly:
        negate = False
        if self.current.kind == "op" and self.current.text in "+-":
            negate = self.advance().text == "-"
        value = self.term()
        if negate:
            value = -value
        while self.current.kind == "op" and self.current.text in "+-":
            sign = self.advance().text
            rhs = self.term()
            value = value + rhs if sign == "+" else value - rhs
        return value

    def term(self) -> galois.Poly:
        value = self.power()
        while True:
            token = self.current
            if token.kind == "op" and token.text == "*":
                self.advance()
                value = value * self.power()
            elif token.kind in ("int", "x", "g", "(", "["):
                value = value * self.power()
            else:
                return value

    def power(self) -> galois.Poly:
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            exponent = int(self.expect("int").text)
            return base**exponent
        return base

    def atom(self) -> galois.Poly:
        token = self.current
        if token.kind == "int":
            self.advance()
            return constant(self.field, self.field.from_int(int(token.text)))
        if token.kind == "x":
            if not self.allow_x:
                raise self.fail("Variable x is not allowed in a field element")
            self.advance()
            return x_poly(self.field)
        if token.kind == "g":
            if self.field.k == 1:
                raise self.fail("Generator g is only defined for extension fields")
            self.advance()
            return constant(self.field, self.field.generator)
        if token.kind == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if token.kind == "[":
            self.advance()
            coeffs = [int(self.expect("int").text)]
            while self.current.kind == ",":
                self.advance()
                coeffs.append(int(self.expect("int").text))
            self.expect("]")
            try:
                element = self.field.from_coeffs(coeffs)
            except FieldError as e:
                raise self.fail(e.message) from e
            return constant(self.field, element)
        raise self.fail(f"Unexpected '{token.text or 'end of input'}'")


def parse_poly(field: FieldCtx, text: str) -> galois.Poly:
    """Polynomial in x over the field, e.g. "(x-1)^2", "x^2+g*x+1"."""
    return _Parser(field, text, allow_x=True).parse()


def parse_element(field: FieldCtx, text: str) -> FieldElement:
    """Field element: an integer, an expression in g, or "[c0,c1,...]"."""
    value = _Parser(field, text, allow_x=False).parse()
    return field.element(poly_asc(value)[0])


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on separators that are outside parentheses and brackets."""
    parts: list[str] = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("Unbalanced brackets", details={"text": text})
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise ParseError("Unbalanced brackets", details={"text": text})
    parts.append(text[start:])
    return parts


def parse_class(
    field: FieldCtx, text: str, *, group: Group = "M", n: int | None = None
) -> ClassHandle:
    """
    Class from invariant-factor text, e.g. "x-1,(x-1)^2" or "(x-1)^3@label=2".

    Raises:
        ParseError: If the text is malformed, the factors are not monic, they do not form
            a divisibility chain, the degrees do not add up to n, or a label is given
            outside SL.
    """
    body, _, label_text = text.partition("@")
    theta: FieldElement | None = None
    if label_text:
        key, _, value = label_text.partition("=")
        if key.strip() != "label" or not value.strip():
            raise ParseError("Class suffix must be '@label=<element>'", details={"text": text})
        if group != "SL":
            raise ParseError("Labels are only meaningful for SL classes", details={"text": text})
        theta = parse_element(field, value)

    polys = []
    for part in split_top_level(body):
        if not part.strip():
            raise ParseError("Empty invariant factor", details={"text": text})
        poly = parse_poly(field, part)
        if is_zero(poly) or poly.degree < 1:
            raise ParseError("Invariant factors must be nonconstant", details={"factor": part})
        if int(poly.coeffs[0]) != 1:
            raise ParseError("Invariant factors must be monic", details={"factor": part})
        polys.append(poly)

    try:
        closure = SimilarityClass.from_chain(field, polys)
    except ClassError as e:
        raise ParseError(e.message, details={"text": text}, cause=e) from e
    if n is not None and closure.n != n:
        raise ParseError(
            "Invariant factor degrees do not add up to n",
            details={"text": text, "n": n, "degree": closure.n},
        )
    if group == "SL":
        return SLClass.of(closure, theta)
    return closure
