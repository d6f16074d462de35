"""Arithmetic expression trees for gate-macro parameters.

OpenQASM gate bodies may parameterize gates with expressions over the macro's
formal parameters (``rz(theta/2) a;``). Those expressions are kept structural
so macro definitions compare equal across a parse/emit round trip and can be
evaluated once actual parameter values are known.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Union

Expr = Union["Num", "Pi", "Param", "Neg", "BinOp", "Call"]

#: unary function names accepted in expressions
FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "ln": math.log,
    "sqrt": math.sqrt,
}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: Expr


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call:
    fn: str
    arg: Expr


class ExpressionError(ValueError):
    """Well-formed expression with no usable real value (1/0, sqrt(-1), ...)."""


def evaluate(expr: Expr | float, env: Mapping[str, float] | None = None) -> float:
    """Evaluate an expression tree; plain numbers pass through."""
    if isinstance(expr, (int, float)):
        return float(expr)
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Pi):
        return math.pi
    if isinstance(expr, Param):
        if env is None or expr.name not in env:
            raise KeyError(expr.name)
        return env[expr.name]
    if isinstance(expr, Neg):
        return -evaluate(expr.operand, env)
    if isinstance(expr, BinOp):
        a = evaluate(expr.left, env)
        b = evaluate(expr.right, env)
        if expr.op == "+":
            return a + b
        if expr.op == "-":
            return a - b
        if expr.op == "*":
            return a * b
        if expr.op == "/":
            return a / b
        if expr.op == "^":
            return a**b
        raise ValueError(f"bad operator {expr.op!r}")
    if isinstance(expr, Call):
        return FUNCTIONS[expr.fn](evaluate(expr.arg, env))
    raise TypeError(f"not an expression: {expr!r}")


def evaluate_strict(expr: Expr | float, env: Mapping[str, float] | None = None) -> float:
    """Evaluate and insist on a finite real result; arithmetic failures become
    ExpressionError instead of leaking ZeroDivisionError and friends."""
    try:
        value = evaluate(expr, env)
    except KeyError as e:
        raise ExpressionError(f"unknown parameter {e.args[0]!r}") from None
    except (ZeroDivisionError, OverflowError, ValueError) as e:
        raise ExpressionError(str(e) or type(e).__name__) from None
    if isinstance(value, complex) or not math.isfinite(value):
        raise ExpressionError("expression has no finite real value")
    return value


def to_source(expr: Expr | float) -> str:
    """Render an expression as OpenQASM source text.

    Non-atomic children are parenthesized, which keeps the printer trivially
    reparse-stable (parentheses carry no structure of their own).
    """
    if isinstance(expr, (int, float)):
        return repr(float(expr))
    if isinstance(expr, Num):
        return repr(expr.value)
    if isinstance(expr, Pi):
        return "pi"
    if isinstance(expr, Param):
        return expr.name
    if isinstance(expr, Neg):
        return f"-{_atom(expr.operand)}"
    if isinstance(expr, BinOp):
        return f"{_atom(expr.left)}{expr.op}{_atom(expr.right)}"
    if isinstance(expr, Call):
        return f"{expr.fn}({to_source(expr.arg)})"
    raise TypeError(f"not an expression: {expr!r}")


def _atom(expr: Expr) -> str:
    text = to_source(expr)
    if isinstance(expr, (Num, Pi, Param, Call)):
        return text
    return f"({text})"
