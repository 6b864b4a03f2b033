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
Recursive-descent parser for field expressions.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | VAR | PARAM | FUNC '(' expr ')' | '(' expr ')'

'^' binds tighter than unary minus and is right-associative, so
``-x^2`` is ``-(x^2)`` and ``2^3^2`` is ``2^(3^2)``.
"""

import re
from typing import NamedTuple

from src.dsl.expression import (
    FUNCTIONS, VARIABLES, Add, Call, Div, Mul, Neg, Num, Param, Pow, Sub, Var,
)
from src.errors import DslSyntaxError

_TOKEN = re.compile(
    r"(?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
)

_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div}


class Token(NamedTuple):
    kind: str
    text: str
    offset: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if not match:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", pos, "expression")
        tokens.append(Token(match.lastgroup, match.group(), pos))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept_op(self, *symbols):
        token = self.current
        if token.kind == "op" and token.text in symbols:
            return self.advance()
        return None

    def expect_op(self, symbol):
        if self.accept_op(symbol) is None:
            self.fail(f"'{symbol}'")

    def fail(self, expected):
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise DslSyntaxError(f"unexpected {found}", token.offset, expected)

    def parse(self):
        expr = self.expr()
        if self.current.kind != "end":
            self.fail("operator or end of input")
        return expr

    def expr(self):
        node = self.term()
        while (token := self.accept_op("+", "-")) is not None:
            node = _BINARY[token.text](node, self.term())
        return node

    def term(self):
        node = self.unary()
        while (token := self.accept_op("*", "/")) is not None:
            node = _BINARY[token.text](node, self.unary())
        return node

    def unary(self):
        if self.accept_op("-") is not None:
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept_op("^") is not None:
            return Pow(base, self.unary())
        return base

    def atom(self):
        token = self.current
        if token.kind == "number":
            self.advance()
            return Num(float(token.text))
        if token.kind == "ident":
            self.advance()
            if token.text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(token.text, arg)
            if token.text in VARIABLES:
                return Var(token.text)
            if self.current.kind == "op" and self.current.text == "(":
                raise DslSyntaxError(f"unknown function '{token.text}'", token.offset, "one of " + ", ".join(FUNCTIONS))
            return Param(token.text)
        if self.accept_op("(") is not None:
            node = self.expr()
            self.expect_op(")")
            return node
        self.fail("number, name or '('")


def parse_expression(text):
    """Parse ``text`` into an expression tree.

    Raises DslSyntaxError with the 0-based offset of the offending token.
    """
    return _Parser(text).parse()
