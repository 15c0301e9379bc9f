"""A tiny recursive-descent parser for arithmetic expressions.

The parser does not know about any algebraic structure.  It evaluates the
expression with Python operators on whatever objects the caller returns for
numbers and identifiers, so the same code reads field literals such as
``(s^2 - t)/3`` and polynomial text such as ``x^2*y - 3*z^3``.
"""

from __future__ import annotations

import re
from typing import Any, Callable

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        if m.group(1) is not None:
            tokens.append(("num", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2)))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, number, ident):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.number = number
        self.ident = ident

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                value = value * rhs if val == "*" else value / rhs
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                # implicit multiplication, as in "2x" or "3(x+y)"
                value = value * self.unary()
            else:
                return value

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            operand = self.unary()
            return -operand if val == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.number(int(val))
        if kind == "id":
            return self.ident(val)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def evaluate(text: str, number: Callable[[int], Any], ident: Callable[[str], Any]) -> Any:
    """Evaluate ``text`` using ``number`` for integer literals and ``ident`` for names."""
    return _Parser(text, number, ident).parse()
