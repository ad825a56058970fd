"""Recursive-descent parser for matrix entries.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'

``VAR`` is ``x`` or ``z`` (the same formal variable).  ``FUNC`` is one of
exp, sin, cos, sinh, cosh and its argument must be ``c*z`` for a rational c.
Division is only by nonzero constants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from .errors import DomainError, ParseError
from .rings import Poly
from .series import DEFAULT_TRUNCATION, Jet, builtin_jet

FUNCTIONS = ("exp", "sin", "cos", "sinh", "cosh")
VARIABLES = ("x", "z")
RINGS = ("polyQ", "int", "analytic")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Var:
    pos: int


@dataclass(frozen=True)
class Neg:
    arg: "Node"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"
    pos: int


Node = Union[Num, Var, Neg, BinOp, Pow, Call]


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, pos=None):
        raise ParseError(msg, self.peek()[2] if pos is None else pos, self.text)

    def expect(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            self.error(f"expected {op!r}", pos)

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            _, op, pos = self.next()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, pos = self.next()
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            arg = self.unary()
            return Neg(arg, pos) if val == "-" else arg
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.next()
            kind, val, epos = self.next()
            if kind != "num":
                self.error("exponent must be a nonnegative integer literal", epos)
            return Pow(base, int(val), pos)
        return base

    def atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            return Num(Fraction(int(val)), pos)
        if kind == "name":
            if val in VARIABLES:
                return Var(pos)
            if val in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(val, arg, pos)
            self.error(f"unknown name {val!r}", pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        self.error("unexpected end of input" if kind == "end" else f"unexpected token {val!r}", pos)


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


class _Lowering:
    """Evaluate an AST to a Poly, promoting to Jet once a builtin appears."""

    def __init__(self, ring: str, point, N: int, text: str):
        self.ring, self.point, self.N, self.text = ring, Fraction(point), N, text

    def fail(self, msg, pos):
        raise ParseError(msg, pos, self.text)

    def jet(self, v):
        return v if isinstance(v, Jet) else Jet.from_poly(v, self.point, self.N)

    def run(self, node):
        if isinstance(node, Num):
            return Poly.const(node.value)
        if isinstance(node, Var):
            if self.ring == "int":
                self.fail("variables are not allowed in integer matrices", node.pos)
            return Poly.x()
        if isinstance(node, Neg):
            return -self.run(node.arg)
        if isinstance(node, Pow):
            return self.run(node.base) ** node.exponent
        if isinstance(node, Call):
            if self.ring != "analytic":
                self.fail(f"builtin {node.name!r} is only allowed in analytic matrices", node.pos)
            arg = self.run(node.arg)
            if isinstance(arg, Jet) or (arg.degree is not None and arg.degree > 1) or arg.coeff(0) != 0:
                self.fail(f"argument of {node.name} must be a rational multiple of z", node.pos)
            try:
                return builtin_jet(node.name, arg.coeff(1), self.point, self.N)
            except DomainError as exc:
                self.fail(str(exc), node.pos)
        if isinstance(node, BinOp):
            a, b = self.run(node.left), self.run(node.right)
            if node.op == "/":
                if isinstance(b, Jet) or not b.is_constant():
                    self.fail("division is only by nonzero constants", node.pos)
                if b.is_zero():
                    self.fail("division by zero", node.pos)
                return a / b.lc if isinstance(a, Jet) else a / b
            if isinstance(a, Jet) or isinstance(b, Jet):
                a, b = self.jet(a), self.jet(b)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            return a * b
        raise TypeError(node)


def lower(node: Node, ring: str = "polyQ", point=0, N: int = DEFAULT_TRUNCATION, text: str = ""):
    if ring not in RINGS:
        raise DomainError(f"unknown ring tag {ring!r}")
    value = _Lowering(ring, point, N, text).run(node)
    if ring == "polyQ":
        return value
    if ring == "int":
        c = value.lc if not value.is_zero() else Fraction(0)
        if c.denominator != 1:
            raise ParseError("integer matrix entry is not an integer", 0, text)
        return int(c)
    return value if isinstance(value, Jet) else Jet.from_poly(value, point, N)


def parse_entry(text: str, ring: str = "polyQ", point=0, N: int = DEFAULT_TRUNCATION):
    """Parse one entry into a Poly (polyQ), int (int) or Jet (analytic)."""
    return lower(parse_expr(text), ring, point, N, text)
