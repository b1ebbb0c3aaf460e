"""Minimal expression language for user-supplied analytic functions.

Grammar (precedence climbing, highest first):

    atom     :=  NUMBER | z | IDENT | log(expr) | conj(expr) | (expr)
    power    :=  atom ^ power            (right associative)
    unary    :=  - unary | power
    term     :=  term * unary | term / unary
    expr     :=  expr + term | expr - term

`z` is the disk variable; any other identifier is a named parameter bound at
evaluation time.  `conj` may only wrap parameter-valued subexpressions (never
`z`), which keeps every expression analytic in z.  Exponents must not depend
on z and may be integer or real.

Trees evaluate on jets, so every node type propagates all derivatives up to
the requested order; see `eval_jet`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import jets
from .errors import DomainError, ParseError

Node = Union["Num", "Var", "Param", "Neg", "Log", "Conj", "Add", "Sub", "Mul", "Div", "Pow"]


@dataclass(frozen=True)
class Num:
    value: float

    def __post_init__(self):
        if not (self.value >= 0.0 and np.isfinite(self.value)):
            raise ValueError("numeric literals are nonnegative; wrap in Neg for negatives")


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: Node


@dataclass(frozen=True)
class Log:
    operand: Node


@dataclass(frozen=True)
class Conj:
    operand: Node


@dataclass(frozen=True)
class Add:
    left: Node
    right: Node


@dataclass(frozen=True)
class Sub:
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul:
    left: Node
    right: Node


@dataclass(frozen=True)
class Div:
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow:
    base: Node
    exponent: Node


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            stripped = src[pos:].lstrip()
            at = len(src) - len(stripped)
            raise ParseError(f"unexpected character {src[at]!r}", at)
        if m.group("num") is not None:
            tokens.append(("num", float(m.group("num")), m.start("num")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(src)))
    return tokens


def contains_var(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, (Num, Param)):
        return False
    if isinstance(node, (Neg, Log, Conj)):
        return contains_var(node.operand)
    if isinstance(node, Pow):
        return contains_var(node.base) or contains_var(node.exponent)
    return contains_var(node.left) or contains_var(node.right)


def parameter_names(node: Node) -> set:
    if isinstance(node, Param):
        return {node.name}
    if isinstance(node, (Num, Var)):
        return set()
    if isinstance(node, (Neg, Log, Conj)):
        return parameter_names(node.operand)
    if isinstance(node, Pow):
        return parameter_names(node.base) | parameter_names(node.exponent)
    return parameter_names(node.left) | parameter_names(node.right)


class _Parser:
    """Precedence-climbing parser: ^ (30, right) > unary - (25) > * / (20) > + - (10)."""

    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)
        self.advance()

    def parse(self) -> Node:
        node = self.expression(0)
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return node

    def expression(self, min_bp: int) -> Node:
        node = self.prefix()
        while True:
            kind, val, pos = self.peek()
            if kind != "op" or val not in "+-*/^":
                break
            bp = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}[val]
            if bp <= min_bp:
                break
            self.advance()
            # right operand: ^ is right associative, the rest left associative
            rhs = self.expression(bp - 1 if val == "^" else bp)
            if val == "^":
                if contains_var(rhs):
                    raise ParseError("exponent must not depend on z", pos)
                node = Pow(node, rhs)
            else:
                node = {"+": Add, "-": Sub, "*": Mul, "/": Div}[val](node, rhs)
        return node

    def prefix(self) -> Node:
        kind, val, pos = self.advance()
        if kind == "num":
            return Num(val)
        if kind == "ident":
            if val == "z":
                return Var()
            if val in ("log", "conj"):
                self.expect_op("(")
                arg = self.expression(0)
                self.expect_op(")")
                if val == "conj":
                    if contains_var(arg):
                        raise ParseError("conj applies to parameters only, never z", pos)
                    return Conj(arg)
                return Log(arg)
            return Param(val)
        if kind == "op" and val == "-":
            return Neg(self.expression(25))
        if kind == "op" and val == "(":
            node = self.expression(0)
            self.expect_op(")")
            return node
        raise ParseError("expected a value", pos)


def parse_expression(src: str) -> Node:
    """Parse an expression string into a tree; raises ParseError with position."""
    return _Parser(src).parse()


def _format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _prec(node: Node) -> int:
    if isinstance(node, (Add, Sub)):
        return 10
    if isinstance(node, (Mul, Div)):
        return 20
    if isinstance(node, Neg):
        return 25
    if isinstance(node, Pow):
        return 30
    return 100


def to_source(node: Node) -> str:
    """Canonical text form; `parse_expression(to_source(t)) == t` for valid trees."""

    def wrap(child: Node, limit: int) -> str:
        s = to_source(child)
        return f"({s})" if _prec(child) <= limit else s

    if isinstance(node, Num):
        return _format_number(node.value)
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Neg):
        return "-" + wrap(node.operand, 24)
    if isinstance(node, Log):
        return f"log({to_source(node.operand)})"
    if isinstance(node, Conj):
        return f"conj({to_source(node.operand)})"
    if isinstance(node, Add):
        return f"{wrap(node.left, 9)} + {wrap(node.right, 10)}"
    if isinstance(node, Sub):
        return f"{wrap(node.left, 9)} - {wrap(node.right, 10)}"
    if isinstance(node, Mul):
        return f"{wrap(node.left, 19)}*{wrap(node.right, 20)}"
    if isinstance(node, Div):
        return f"{wrap(node.left, 19)}/{wrap(node.right, 20)}"
    if isinstance(node, Pow):
        return f"{wrap(node.base, 30)}^{wrap(node.exponent, 29)}"
    raise TypeError(f"not an expression node: {node!r}")


def eval_jet(node: Node, z, order: int, params: dict) -> np.ndarray:
    """Jet-lifted evaluation: returns coefficient array of shape (order+1, *batch)."""
    bshape = (1,) * np.ndim(z)  # constants broadcast against the batch axes

    def const_value(sub: Node) -> complex:
        jet = rec(sub)
        return complex(np.asarray(jet[0]).flat[0])

    def rec(sub: Node) -> np.ndarray:
        if isinstance(sub, Num):
            return jets.jconst(sub.value, order, bshape)
        if isinstance(sub, Var):
            return jets.jvar(z, order)
        if isinstance(sub, Param):
            return jets.jconst(params[sub.name], order, bshape)
        if isinstance(sub, Neg):
            return jets.jneg(rec(sub.operand))
        if isinstance(sub, Log):
            return jets.jlog(rec(sub.operand))
        if isinstance(sub, Conj):
            return jets.jconst(np.conj(const_value(sub.operand)), order, bshape)
        if isinstance(sub, Add):
            return jets.jadd(rec(sub.left), rec(sub.right))
        if isinstance(sub, Sub):
            return jets.jsub(rec(sub.left), rec(sub.right))
        if isinstance(sub, Mul):
            return jets.jmul(rec(sub.left), rec(sub.right))
        if isinstance(sub, Div):
            return jets.jdiv(rec(sub.left), rec(sub.right))
        if isinstance(sub, Pow):
            q = complex(np.asarray(rec(sub.exponent)[0]).flat[0])
            if abs(q.imag) > 1e-15:
                raise DomainError("exponents must be real")
            base = rec(sub.base)
            if float(q.real).is_integer():
                return jets.jpow_int(base, int(q.real))
            return jets.jpow_real(base, float(q.real))
        raise TypeError(f"not an expression node: {sub!r}")

    return rec(node)
