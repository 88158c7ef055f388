"""Recursive-descent parser for rational expressions in the spectral variables.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' ['-'] integer)?
    base   := number | variable | '(' expr ')' | '-' factor
    number := digits ['.' digits]
    variable := 'lambda' | 'mu' | 'nu' | 'eta'
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ExpressionSyntaxError, PoleError
from ..exact import VARIABLES, RatFunc

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


def tokenize(text):
    """List of (kind, value, position); ends with ('eof', None, len(text))."""
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("eof", None, n))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, what):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "eof" else repr(value)
        raise ExpressionSyntaxError(f"expected {what}, found {found}", self.text, pos)

    def expect_op(self, op):
        kind, value, _ = self.peek()
        if kind != "op" or value != op:
            self.fail(repr(op))
        self.take()

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "eof":
            self.fail("operator or end of input")
        return e

    def expr(self):
        acc = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if value == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value in "*/":
                self.take()
                rhs = self.factor()
                if value == "*":
                    acc = acc * rhs
                else:
                    if rhs.is_zero():
                        raise PoleError(f"division by an identically zero expression at position {pos}")
                    acc = acc / rhs
            else:
                return acc

    def factor(self):
        base = self.base()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            kind, value, pos = self.peek()
            if kind != "num" or "." in value:
                self.fail("integer exponent")
            self.take()
            e = sign * int(value)
            if e < 0 and base.is_zero():
                raise PoleError(f"negative power of zero at position {pos}")
            return base**e
        return base

    def base(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return RatFunc.const(Fraction(value))
        if kind == "name":
            if value not in VARIABLES:
                raise ExpressionSyntaxError(
                    f"unknown variable {value!r} (allowed: {', '.join(VARIABLES)})", self.text, pos
                )
            self.take()
            return RatFunc.var(value)
        if kind == "op" and value == "(":
            self.take()
            e = self.expr()
            self.expect_op(")")
            return e
        if kind == "op" and value == "-":
            self.take()
            return -self.factor()
        self.fail("number, variable, '(' or '-'")


def parse_expression(text):
    """Parse ``text`` into a canonical RatFunc."""
    if not isinstance(text, str):
        if isinstance(text, (int, Fraction)):
            return RatFunc.const(Fraction(text))
        raise TypeError(f"expression must be a string, got {type(text).__name__}")
    return _Parser(text).parse()


def format_expression(f):
    """Canonical text for ``f``; ``parse_expression(format_expression(f)) == f``."""
    return str(f)
