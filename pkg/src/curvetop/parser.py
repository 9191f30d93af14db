"""Recursive-descent parser for bivariate polynomial text.

Grammar (EBNF)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary | implicit } ;
    implicit= (* a number immediately followed by a variable, e.g. 10x^2 *)
    unary   = ("+" | "-") unary | power ;
    power   = atom [ ("^" | "**") exponent ] ;
    exponent= integer | "(" integer ")" ;
    atom    = number | variable | "(" expr ")" ;
    number  = digit { digit } [ "." digit { digit } ] ;

Division is only allowed by a nonzero constant.  Exponents are nonnegative
integers.  Whitespace is insignificant.  Intermediate results may not exceed
total degree ``MAX_DEGREE``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .errors import PolynomialSyntaxError, UnknownVariable
from .polynomial import BiPoly

MAX_DEGREE = 200

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    raw = text.encode("utf-8")
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            while pos < n and text[pos].isspace():
                pos += 1
            offset = len(text[:pos].encode("utf-8"))
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", offset)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), len(text[:start].encode("utf-8"))))
        pos = m.end()
    toks.append(("end", "", len(raw)))
    return toks


class _Parser:
    def __init__(self, text, var_names):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = var_names

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, off = self.take()
        if v != value or kind == "end":
            raise PolynomialSyntaxError(f"expected {value!r}", off)

    def parse(self) -> BiPoly:
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty expression", self.peek()[2])
        p = self.expr()
        kind, v, off = self.peek()
        if kind != "end":
            raise PolynomialSyntaxError(f"unexpected {v!r}", off)
        return p

    def expr(self) -> BiPoly:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> BiPoly:
        p = self.unary()
        while True:
            kind, v, off = self.peek()
            if kind == "op" and v in ("*", "/"):
                self.take()
                q = self.unary()
                if v == "*":
                    if p.total_degree + q.total_degree > MAX_DEGREE:
                        raise PolynomialSyntaxError(f"degree exceeds {MAX_DEGREE}", off)
                    p = p * q
                else:
                    if q.total_degree > 0:
                        raise PolynomialSyntaxError("division by a non-constant", off)
                    if q.is_zero():
                        raise PolynomialSyntaxError("division by zero", off)
                    p = p * (1 / q.terms[(0, 0)])
            elif kind == "id" and self.toks[self.i - 1][0] == "num":
                p = p * self.power()
            else:
                return p

    def unary(self) -> BiPoly:
        kind, v, off = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if v == "-" else p
        return self.power()

    def power(self) -> BiPoly:
        base = self.atom()
        kind, v, off = self.peek()
        if kind == "op" and v in ("^", "**"):
            self.take()
            e = self.exponent()
            if base.total_degree * e > MAX_DEGREE:
                raise PolynomialSyntaxError(f"degree exceeds {MAX_DEGREE}", off)
            return base ** e
        return base

    def exponent(self) -> int:
        kind, v, off = self.take()
        if kind == "op" and v == "(":
            e = self.exponent()
            self.expect(")")
            return e
        if kind != "num" or "." in v:
            raise PolynomialSyntaxError("exponent must be a nonnegative integer", off)
        return int(v)

    def atom(self) -> BiPoly:
        kind, v, off = self.take()
        if kind == "num":
            return BiPoly.constant(Fraction(v))
        if kind == "id":
            if v == self.vars[0]:
                return BiPoly.x()
            if v == self.vars[1]:
                return BiPoly.y()
            raise UnknownVariable(v, off)
        if kind == "op" and v == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise PolynomialSyntaxError("unexpected end of input", off)
        raise PolynomialSyntaxError(f"unexpected {v!r}", off)


def parse_polynomial(text: str, var_names: Tuple[str, str] = ("x", "y")) -> BiPoly:
    """Parse ``text`` into a :class:`BiPoly` over the two named variables."""
    try:
        return _Parser(text, var_names).parse()
    except RecursionError:
        raise PolynomialSyntaxError("expression nested too deeply", 0) from None
