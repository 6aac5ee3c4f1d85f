"""Univariate expressions: tokenizer, recursive-descent parser, evaluators.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' '-'? number)?
    atom   := number | 'x' | ident '(' expr ')' | '(' expr ')'
    ident  := 'exp' | 'ln' | 'sin' | 'cos' | 'arctan' | 'sqrt'

Integer exponent literals become integer powers (fine at x <= 0); any other
literal exponent is a real power and needs a positive base.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Union

from .errors import (
    AlgebraError,
    DomainError,
    EvaluationError,
    ExprSyntaxError,
    NotInvertibleError,
)
from .jet import Jet
from .lift import ARCTAN, COS, EXP, LN, SIN, ElementaryFn, apply_elementary, pow_int, pow_real

Span = tuple[int, int]


@dataclass(frozen=True)
class Const:
    value: float
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: Union[int, float]  # int -> integer power, float -> real power
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    fn: ElementaryFn
    arg: "Expr"
    span: Span | None = field(default=None, compare=False, repr=False)


Expr = Union[Const, Var, Neg, BinOp, Pow, Call]

FUNCTIONS = {"exp": EXP, "ln": LN, "sin": SIN, "cos": COS, "arctan": ARCTAN}
_NAMES = {v.kind: k for k, v in FUNCTIONS.items()}


# -- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, op, end
    text: str
    start: int
    end: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", (pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("end", "", len(src), len(src)))
    return tokens


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None) -> ExprSyntaxError:
        tok = tok or self.tok
        if tok.kind == "end":
            return ExprSyntaxError(f"{msg}: unexpected end of input", (tok.start, tok.end))
        return ExprSyntaxError(f"{msg}: unexpected {tok.text!r}", (tok.start, tok.end))

    def expect(self, text: str) -> Token:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        raise self.error(f"expected {text!r}")

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise self.error("syntax error")
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            right = self.term()
            left = BinOp(op, left, right, (left.span[0], right.span[1]))
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            right = self.unary()
            left = BinOp(op, left, right, (left.span[0], right.span[1]))
        return left

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            start = self.advance().start
            arg = self.unary()
            return Neg(arg, (start, arg.span[1]))
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if not (self.tok.kind == "op" and self.tok.text == "^"):
            return base
        self.advance()
        sign = 1
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            sign = -1
        if self.tok.kind != "num":
            raise self.error("exponent must be a numeric literal")
        num = self.advance()
        if re.fullmatch(r"\d+", num.text):
            exponent: int | float = sign * int(num.text)
        else:
            exponent = sign * float(num.text)
        return Pow(base, exponent, (base.span[0], num.end))

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            value = float(tok.text)
            if not math.isfinite(value):
                raise ExprSyntaxError(f"numeric literal out of range: {tok.text}", (tok.start, tok.end))
            return Const(value, (tok.start, tok.end))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "x":
                return Var((tok.start, tok.end))
            if tok.text not in FUNCTIONS and tok.text != "sqrt":
                raise ExprSyntaxError(f"unknown identifier {tok.text!r}", (tok.start, tok.end))
            self.expect("(")
            arg = self.expr()
            close = self.expect(")")
            span = (tok.start, close.end)
            if tok.text == "sqrt":
                return Pow(arg, 0.5, span)
            return Call(FUNCTIONS[tok.text], arg, span)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error("syntax error")


def parse(src: str) -> Expr:
    """Parse an expression in ``x``; raises ExprSyntaxError with a span."""
    return _Parser(src).parse()


# -- formatting --------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def _wrap(e: Expr, min_prec: int) -> str:
    s = format_expr(e)
    return f"({s})" if _prec(e) < min_prec else s


def format_expr(e: Expr) -> str:
    """Render an AST as source text that parses back to the same tree."""
    if isinstance(e, Const):
        return repr(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        return f"{_wrap(e.left, p)} {e.op} {_wrap(e.right, p + 1)}"
    if isinstance(e, Pow):
        exp = str(e.exponent) if isinstance(e.exponent, int) else repr(float(e.exponent))
        return f"{_wrap(e.base, 5)}^{exp}"
    if isinstance(e, Call):
        return f"{_NAMES[e.fn.kind]}({format_expr(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluation --------------------------------------------------------------


def evaluate(
    e: Expr,
    x,
    const: Callable[[float], object],
    call: Callable[[ElementaryFn, object], object],
):
    """Structural evaluation over any algebra with + - * /.

    ``const`` embeds a real constant, ``call`` applies an elementary function.
    Errors raised by the algebra are re-raised as EvaluationError carrying the
    span of the node that failed.
    """

    def ev(node: Expr):
        try:
            if isinstance(node, Const):
                return const(node.value)
            if isinstance(node, Var):
                return x
            if isinstance(node, Neg):
                return -ev(node.arg)
            if isinstance(node, BinOp):
                a, b = ev(node.left), ev(node.right)
                if node.op == "+":
                    return a + b
                if node.op == "-":
                    return a - b
                if node.op == "*":
                    return a * b
                return a / b
            if isinstance(node, Pow):
                b = ev(node.base)
                if isinstance(node.exponent, int):
                    return call(pow_int(node.exponent), b)
                return call(pow_real(node.exponent), b)
            if isinstance(node, Call):
                return call(node.fn, ev(node.arg))
        except EvaluationError:
            raise
        except (ZeroDivisionError, NotInvertibleError) as exc:
            raise EvaluationError(f"division by zero: {exc}", node.span) from exc
        except (DomainError, AlgebraError, OverflowError) as exc:
            raise EvaluationError(f"domain error: {exc}", node.span) from exc
        raise TypeError(f"not an expression node: {node!r}")

    return ev(e)


def _real_call(fn: ElementaryFn, v: float) -> float:
    out = fn(v)
    if not math.isfinite(out):
        raise OverflowError(f"{fn.name} overflowed at {v!r}")
    return out


def eval_real(e: Expr, x: float) -> float:
    out = evaluate(e, float(x), float, _real_call)
    if not math.isfinite(out):
        raise EvaluationError(f"non-finite result {out!r}", e.span)
    return out


def eval_jet(e: Expr, j: Jet) -> Jet:
    """Evaluate the jet extension of ``e`` at ``j``."""
    return evaluate(e, j, lambda c: Jet.constant(c, j.order), apply_elementary)
