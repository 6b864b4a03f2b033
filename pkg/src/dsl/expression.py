#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# Copyright 2025 Cusp-Fold Lab
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Expression trees for the field language.

Nodes are frozen dataclasses, so structural equality and hashing come for
free. Evaluation and differentiation dispatch on the node type.
"""

import math
from dataclasses import dataclass
from functools import singledispatch
from typing import ClassVar

from src.errors import DomainError, UnboundParameter

VARIABLES = ("x", "y", "z")
FUNCTIONS = ("sin", "cos", "exp", "sqrt", "log")

# Binding strength used by the printer; the parser encodes the same order.
PREC_ADD = 1
PREC_MUL = 2
PREC_NEG = 3
PREC_POW = 4
PREC_ATOM = 5


class Expr:
    precedence: ClassVar[int] = PREC_ATOM

    def __str__(self):
        return pretty_print(self)


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Param(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    precedence: ClassVar[int] = PREC_NEG


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


@dataclass(frozen=True)
class BinaryOp(Expr):
    left: Expr
    right: Expr
    symbol: ClassVar[str] = "?"
    right_assoc: ClassVar[bool] = False


@dataclass(frozen=True)
class Add(BinaryOp):
    symbol: ClassVar[str] = "+"
    precedence: ClassVar[int] = PREC_ADD


@dataclass(frozen=True)
class Sub(BinaryOp):
    symbol: ClassVar[str] = "-"
    precedence: ClassVar[int] = PREC_ADD


@dataclass(frozen=True)
class Mul(BinaryOp):
    symbol: ClassVar[str] = "*"
    precedence: ClassVar[int] = PREC_MUL


@dataclass(frozen=True)
class Div(BinaryOp):
    symbol: ClassVar[str] = "/"
    precedence: ClassVar[int] = PREC_MUL


@dataclass(frozen=True)
class Pow(BinaryOp):
    symbol: ClassVar[str] = "^"
    precedence: ClassVar[int] = PREC_POW
    right_assoc: ClassVar[bool] = True


ZERO = Num(0.0)
ONE = Num(1.0)


# --- printing ---

def _format_number(value):
    if value.is_integer() and abs(value) < 1e15:
        text = str(int(value))
    else:
        text = repr(value)
    # The grammar has no signed literals.
    return f"({text})" if value < 0 else text


def pretty_print(expr):
    """Render ``expr`` with the minimal parentheses that parse back to it."""
    if isinstance(expr, Num):
        return _format_number(expr.value)
    if isinstance(expr, (Var, Param)):
        return expr.name
    if isinstance(expr, Call):
        return f"{expr.func}({pretty_print(expr.arg)})"
    if isinstance(expr, Neg):
        inner = pretty_print(expr.operand)
        if expr.operand.precedence < PREC_NEG:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(expr, BinaryOp):
        left = pretty_print(expr.left)
        right = pretty_print(expr.right)
        prec = expr.precedence
        if expr.right_assoc:
            wrap_left = expr.left.precedence <= prec
            wrap_right = expr.right.precedence < prec
        else:
            wrap_left = expr.left.precedence < prec
            wrap_right = expr.right.precedence <= prec
        if wrap_left:
            left = f"({left})"
        if wrap_right:
            right = f"({right})"
        if isinstance(expr, (Add, Sub)):
            return f"{left} {expr.symbol} {right}"
        return f"{left}{expr.symbol}{right}"
    raise TypeError(f"not an expression node: {expr!r}")


# --- structure ---

def children(expr):
    if isinstance(expr, BinaryOp):
        return (expr.left, expr.right)
    if isinstance(expr, Neg):
        return (expr.operand,)
    if isinstance(expr, Call):
        return (expr.arg,)
    return ()


def free_params(expr):
    """Names of every Param node in ``expr``."""
    found = set()
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Param):
            found.add(node.name)
        stack.extend(children(node))
    return found


def depends_on_variables(expr):
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            return True
        stack.extend(children(node))
    return False


# --- evaluation ---

def eval_expr(expr, point, params):
    """Evaluate ``expr`` at ``point`` (anything with x, y, z) under ``params``."""
    env = {"x": float(point.x), "y": float(point.y), "z": float(point.z)}
    return _evaluate(expr, env, params)


@singledispatch
def _evaluate(expr, env, params):
    raise TypeError(f"cannot evaluate {type(expr).__name__}")


@_evaluate.register(Num)
def _(expr, env, params):
    return expr.value


@_evaluate.register(Var)
def _(expr, env, params):
    return env[expr.name]


@_evaluate.register(Param)
def _(expr, env, params):
    try:
        return float(params[expr.name])
    except KeyError:
        raise UnboundParameter(expr.name) from None


@_evaluate.register(Neg)
def _(expr, env, params):
    return -_evaluate(expr.operand, env, params)


@_evaluate.register(Add)
def _(expr, env, params):
    return _evaluate(expr.left, env, params) + _evaluate(expr.right, env, params)


@_evaluate.register(Sub)
def _(expr, env, params):
    return _evaluate(expr.left, env, params) - _evaluate(expr.right, env, params)


@_evaluate.register(Mul)
def _(expr, env, params):
    return _evaluate(expr.left, env, params) * _evaluate(expr.right, env, params)


@_evaluate.register(Div)
def _(expr, env, params):
    numerator = _evaluate(expr.left, env, params)
    denominator = _evaluate(expr.right, env, params)
    if denominator == 0.0:
        raise DomainError(f"division by zero in {pretty_print(expr)}")
    return numerator / denominator


@_evaluate.register(Pow)
def _(expr, env, params):
    base = _evaluate(expr.left, env, params)
    exponent = _evaluate(expr.right, env, params)
    if base < 0.0 and not exponent.is_integer():
        raise DomainError(f"negative base {base!r} with fractional exponent in {pretty_print(expr)}")
    if base == 0.0 and exponent < 0.0:
        raise DomainError(f"zero raised to a negative power in {pretty_print(expr)}")
    try:
        return base ** exponent
    except OverflowError:
        raise DomainError(f"overflow in {pretty_print(expr)}") from None


@_evaluate.register(Call)
def _(expr, env, params):
    arg = _evaluate(expr.arg, env, params)
    if expr.func == "sqrt" and arg < 0.0:
        raise DomainError(f"sqrt of negative value {arg!r}")
    if expr.func == "log" and arg <= 0.0:
        raise DomainError(f"log of non-positive value {arg!r}")
    try:
        return getattr(math, expr.func)(arg)
    except OverflowError:
        raise DomainError(f"overflow in {pretty_print(expr)}") from None


# --- light simplification (0/1 folding only) ---

def _is_num(expr, value):
    return isinstance(expr, Num) and expr.value == value


def add(u, v):
    if _is_num(u, 0.0):
        return v
    if _is_num(v, 0.0):
        return u
    return Add(u, v)


def sub(u, v):
    if _is_num(v, 0.0):
        return u
    if _is_num(u, 0.0):
        return neg(v)
    return Sub(u, v)


def mul(u, v):
    if _is_num(u, 0.0) or _is_num(v, 0.0):
        return ZERO
    if _is_num(u, 1.0):
        return v
    if _is_num(v, 1.0):
        return u
    return Mul(u, v)


def div(u, v):
    if _is_num(u, 0.0):
        return ZERO
    if _is_num(v, 1.0):
        return u
    return Div(u, v)


def power(u, v):
    if _is_num(v, 0.0):
        return ONE
    if _is_num(v, 1.0):
        return u
    return Pow(u, v)


def neg(u):
    if _is_num(u, 0.0):
        return ZERO
    if isinstance(u, Neg):
        return u.operand
    return Neg(u)


# --- differentiation ---

@singledispatch
def diff_expr(expr, var):
    """Symbolic partial derivative of ``expr`` with respect to ``var``."""
    raise TypeError(f"cannot differentiate {type(expr).__name__}")


@diff_expr.register(Num)
@diff_expr.register(Param)
def _(expr, var):
    return ZERO


@diff_expr.register(Var)
def _(expr, var):
    return ONE if expr.name == var else ZERO


@diff_expr.register(Neg)
def _(expr, var):
    return neg(diff_expr(expr.operand, var))


@diff_expr.register(Add)
def _(expr, var):
    return add(diff_expr(expr.left, var), diff_expr(expr.right, var))


@diff_expr.register(Sub)
def _(expr, var):
    return sub(diff_expr(expr.left, var), diff_expr(expr.right, var))


@diff_expr.register(Mul)
def _(expr, var):
    u, v = expr.left, expr.right
    return add(mul(diff_expr(u, var), v), mul(u, diff_expr(v, var)))


@diff_expr.register(Div)
def _(expr, var):
    u, v = expr.left, expr.right
    du, dv = diff_expr(u, var), diff_expr(v, var)
    if _is_num(dv, 0.0):
        return div(du, v)
    return div(sub(mul(du, v), mul(u, dv)), power(v, Num(2.0)))


@diff_expr.register(Pow)
def _(expr, var):
    base, exponent = expr.left, expr.right
    dbase = diff_expr(base, var)
    if not depends_on_variables(exponent):
        if isinstance(exponent, Num):
            reduced = Num(exponent.value - 1.0)
        else:
            reduced = sub(exponent, ONE)
        return mul(mul(exponent, power(base, reduced)), dbase)
    # d(u^v) = u^v * (v' log(u) + v u'/u)
    dexp = diff_expr(exponent, var)
    inner = add(mul(dexp, Call("log", base)), div(mul(exponent, dbase), base))
    return mul(expr, inner)


@diff_expr.register(Call)
def _(expr, var):
    u = expr.arg
    du = diff_expr(u, var)
    if _is_num(du, 0.0):
        return ZERO
    if expr.func == "sin":
        outer = Call("cos", u)
    elif expr.func == "cos":
        outer = neg(Call("sin", u))
    elif expr.func == "exp":
        outer = expr
    elif expr.func == "sqrt":
        return div(du, mul(Num(2.0), expr))
    elif expr.func == "log":
        return div(du, u)
    else:
        raise TypeError(f"unknown function {expr.func}")
    return mul(outer, du)
