"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace insignificant, no implicit multiplication)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := int | var | '(' expr ')'

Division is only allowed by nonzero constants, so rational coefficients
such as ``3/2*x`` can be written and printed polynomials parse back.
"""

from __future__ import annotations

import re

from .errors import NotInvertibleError, ParseError, UnknownVariableError
from .ring import Polynomial, Ring, poly_add, poly_mul, poly_pow

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.F = ring.field
        self.one = ring.one_monomial
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def const(self, value):
        try:
            c = self.F(value)
        except ZeroDivisionError as exc:
            raise NotInvertibleError(str(exc), self.peek()[2], self.text) from None
        return {self.one: c} if c != 0 else {}

    def expr(self):
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = poly_add(self.F, {}, acc, -1)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                acc = poly_add(self.F, acc, rhs, 1 if tok[1] == "+" else -1)
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = poly_mul(self.F, acc, self.factor())
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                div_tok = self.peek()
                d = self.factor()
                if not d:
                    raise NotInvertibleError("division by zero", div_tok[2], self.text)
                if set(d) != {self.one}:
                    raise self.error("division only by constants", div_tok)
                inv = self.F.inv(d[self.one])
                acc = {m: self.F.mul(v, inv) for m, v in acc.items()}
            else:
                return acc

    def factor(self):
        base = self.base()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "int":
                raise self.error("expected a non-negative integer exponent", exp_tok)
            return poly_pow(self.F, base, exp_tok[1], self.one)
        return base

    def base(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return self.const(value)
        if kind == "var":
            idx = self.ring.index.get(value)
            if idx is None:
                raise UnknownVariableError(f"unknown variable {value!r}", pos, self.text)
            return {self.ring.var_monomial(idx): self.F.one}
        if kind == "op" and value == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {value!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected token {tok[1]!r}", tok)
        return result


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` into an expanded polynomial of ``ring``."""
    return Polynomial(ring, _Parser(text, ring).parse())
