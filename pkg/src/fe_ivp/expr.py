"""A small expression language for initial functions.

Grammar (precedence climbing, lowest first)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' unary)?          # right-associative
    primary := NUMBER | 'x' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'

``-x^2`` therefore parses as ``-(x^2)`` and ``2^-1`` is accepted. There is
no unary plus.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError, ExprSyntaxError, UnknownIdentifierError


def _frac(x: float) -> float:
    f = x - math.floor(x)
    # x - floor(x) rounds up to 1.0 for tiny negative x
    return 0.0 if f >= 1.0 else f


def _ln(x: float) -> float:
    if x <= 0:
        raise DomainError(f"ln of non-positive value {x!r}")
    return math.log(x)


def _sqrt(x: float) -> float:
    if x < 0:
        raise DomainError(f"sqrt of negative value {x!r}")
    return math.sqrt(x)


FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "ln": _ln,
    "abs": abs,
    "sqrt": _sqrt,
    "floor": lambda v: float(math.floor(v)),
    "frac": _frac,
}
CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Const, Neg, BinOp, Call]


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        kind, text, pos = self.tok
        if text != value:
            raise ExprSyntaxError(f"unexpected {text or 'end of input'!r}", pos, repr(value))
        self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        kind, text, pos = self.tok
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", pos, "operator or end of input")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok[1] in ("+", "-") and self.tok[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.tok[1] in ("*", "/") and self.tok[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.tok == ("op", "-", self.tok[2]):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.tok[1] == "^" and self.tok[0] == "op":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def primary(self) -> Expr:
        kind, text, pos = self.tok
        if kind == "num":
            self.advance()
            return Num(float(text))
        if kind == "ident":
            self.advance()
            if text == "x":
                return Var()
            if text in CONSTANTS:
                return Const(text)
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            raise UnknownIdentifierError(text, pos)
        if text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ExprSyntaxError(
            f"unexpected {text or 'end of input'!r}", pos, "number, 'x', constant, function or '('"
        )


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def _check(v: float, what: str) -> float:
    if math.isnan(v) or math.isinf(v):
        raise DomainError(f"{what} produced a non-finite value")
    return v


def evaluate(e: Expr, x: float) -> float:
    """Real value of ``e`` at ``x``; NaN/Inf and undefined operations raise DomainError."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Const):
        return CONSTANTS[e.name]
    if isinstance(e, Neg):
        return -evaluate(e.operand, x)
    if isinstance(e, Call):
        arg = evaluate(e.arg, x)
        try:
            return _check(FUNCTIONS[e.func](arg), e.func)
        except (ValueError, OverflowError):
            raise DomainError(f"{e.func}({arg!r}) is undefined") from None
    a = evaluate(e.left, x)
    b = evaluate(e.right, x)
    op = e.op
    try:
        if op == "+":
            return _check(a + b, "addition")
        if op == "-":
            return _check(a - b, "subtraction")
        if op == "*":
            return _check(a * b, "multiplication")
        if op == "/":
            if b == 0:
                raise DomainError("division by zero")
            return _check(a / b, "division")
        return _check(math.pow(a, b), "power")
    except (ValueError, OverflowError, ZeroDivisionError):
        raise DomainError(f"{a!r} {op} {b!r} is undefined") from None


eval_expr = evaluate


# -- printing ---------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_UNARY = 3
_ATOM = 5


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _UNARY
    if isinstance(e, Num) and e.value < 0:
        return _UNARY
    return _ATOM


def _num(v: float) -> str:
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def to_string(e: Expr) -> str:
    """Canonical text; ``parse(to_string(e)) == e`` for every parsed tree."""

    def wrap(sub: Expr, need: bool) -> str:
        s = to_string(sub)
        return f"({s})" if need else s

    if isinstance(e, Num):
        return _num(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}({to_string(e.arg)})"
    if isinstance(e, Neg):
        return "-" + wrap(e.operand, _prec(e.operand) < _UNARY)
    p = _PREC[e.op]
    if e.op == "^":
        left = wrap(e.left, _prec(e.left) <= p)
        right = wrap(e.right, _prec(e.right) < _UNARY)
        return f"{left}^{right}"
    left = wrap(e.left, _prec(e.left) < p)
    right = wrap(e.right, _prec(e.right) <= p)
    return f"{left}{e.op}{right}"


def compile_expr(text_or_expr: "str | Expr") -> Callable[[float], float]:
    e = parse(text_or_expr) if isinstance(text_or_expr, str) else text_or_expr
    return lambda x: evaluate(e, x)
