"""Expression language for elements of K_n.

Grammar, loosest binding first::

    sum     := product (("+" | "-") product)*
    product := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" ["-"] INT)?
    atom    := INT | "zeta(" INT ")" | VAR | "(" sum ")"

``VAR`` is ``x<i>`` or ``y<i>`` with a 1-based index.  Rationals are written
as quotients, e.g. ``3/2*x1^2*y3 - zeta(4)*y1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .coeff import zeta
from .errors import DivisionByZeroError, ExprSyntaxError
from .multipoly import Poly, VarIndex, VarKind
from .ratfunc import RatFn

__all__ = ["BinOp", "ExprAST", "Neg", "Num", "Pow", "Var", "Zeta", "lower", "parse_expr", "parse_ratfn"]


@dataclass(frozen=True)
class Num:
    value: int
    offset: int = 0


@dataclass(frozen=True)
class Zeta:
    order: int
    offset: int = 0


@dataclass(frozen=True)
class Var:
    var: VarIndex
    offset: int = 0


@dataclass(frozen=True)
class Neg:
    operand: "ExprAST"
    offset: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ExprAST"
    right: "ExprAST"
    offset: int = 0


@dataclass(frozen=True)
class Pow:
    base: "ExprAST"
    exponent: int
    offset: int = 0


ExprAST = Union[Num, Zeta, Var, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<zeta>zeta)|(?P<var>[xy])(?P<idx>\d+)|(?P<op>[-+*/^()]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            start = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise ExprSyntaxError(f"unexpected character {src[start]!r}", len(src[:start].encode("utf-8")))
        if m.group("int") is not None:
            kind, text = "int", m.group("int")
        elif m.group("zeta") is not None:
            kind, text = "zeta", "zeta"
        elif m.group("var") is not None:
            kind, text = "var", m.group("var") + m.group("idx")
        else:
            kind, text = "op", m.group("op")
        start = m.end() - len(text)
        tokens.append((kind, text, len(src[:start].encode("utf-8"))))
        pos = m.end()
    tokens.append(("end", "", len(src.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, src: str, rank: int | None):
        self.tokens = _tokenize(src)
        self.i = 0
        self.rank = rank

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None):
        tok = self.take()
        if tok[0] != kind or (text is not None and tok[1] != text):
            want = text or kind
            got = tok[1] or "end of input"
            raise ExprSyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        return tok

    def parse(self) -> ExprAST:
        node = self.sum()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def sum(self):
        node = self.product()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            _, op, off = self.take()
            node = BinOp(op, node, self.product(), off)
        return node

    def product(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, off = self.take()
            node = BinOp(op, node, self.unary(), off)
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return Neg(self.unary(), tok[2])
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            exp = self.expect("int")
            return Pow(base, sign * int(exp[1]), tok[2])
        return base

    def atom(self):
        tok = self.take()
        kind, text, off = tok
        if kind == "int":
            return Num(int(text), off)
        if kind == "zeta":
            self.expect("op", "(")
            order = self.expect("int")
            self.expect("op", ")")
            if int(order[1]) < 1:
                raise ExprSyntaxError("zeta needs a positive order", order[2])
            return Zeta(int(order[1]), off)
        if kind == "var":
            idx = int(text[1:])
            if idx < 1:
                raise ExprSyntaxError(f"variable index must be >= 1 in {text!r}", off)
            if self.rank is not None and idx > self.rank:
                raise ExprSyntaxError(f"variable {text} exceeds rank {self.rank}", off)
            return Var(VarIndex(VarKind(text[0]), idx), off)
        if kind == "op" and text == "(":
            node = self.sum()
            self.expect("op", ")")
            return node
        raise ExprSyntaxError(f"unexpected {text or 'end of input'!r}", off)


def parse_expr(src: str, rank: int | None = None) -> ExprAST:
    """Parse ``src``; variable indices above ``rank`` are rejected when rank is given."""
    return _Parser(src, rank).parse()


def max_index(node: ExprAST) -> int:
    if isinstance(node, Var):
        return node.var.index
    if isinstance(node, (Neg,)):
        return max_index(node.operand)
    if isinstance(node, Pow):
        return max_index(node.base)
    if isinstance(node, BinOp):
        return max(max_index(node.left), max_index(node.right))
    return 0


def lower(node: ExprAST, rank: int) -> RatFn:
    """Evaluate an AST to an exact rational function of the given rank."""
    if isinstance(node, Num):
        return RatFn.constant(rank, node.value)
    if isinstance(node, Zeta):
        return RatFn.constant(rank, zeta(node.order))
    if isinstance(node, Var):
        return RatFn(Poly.var(rank, node.var))
    if isinstance(node, Neg):
        return -lower(node.operand, rank)
    if isinstance(node, Pow):
        base = lower(node.base, rank)
        if node.exponent < 0 and base.is_zero():
            raise DivisionByZeroError(f"negative power of zero at offset {node.offset}")
        return base ** node.exponent
    if isinstance(node, BinOp):
        left, right = lower(node.left, rank), lower(node.right, rank)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right.is_zero():
            raise DivisionByZeroError(f"division by zero at offset {node.offset}")
        return left / right
    raise TypeError(f"not an expression node: {node!r}")


def parse_ratfn(src: str, rank: int) -> RatFn:
    return lower(parse_expr(src, rank), rank)
