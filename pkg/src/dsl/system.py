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

from src.dsl.expression import VARIABLES, add, diff_expr, eval_expr, mul, pretty_print
from src.models.geometry import Point3
from src.models.system import Field, PiecewiseSystem


def lie_derivative_exprs(components, order):
    """Expressions for L h, ..., L^order h with h = z along ``components``."""
    result = [components[2]]
    while len(result) < order:
        previous = result[-1]
        nxt = None
        for var, comp in zip(VARIABLES, components):
            term = mul(comp, diff_expr(previous, var))
            nxt = term if nxt is None else add(nxt, term)
        result.append(nxt)
    return result


class ExpressionSystem(PiecewiseSystem):
    """System handle backed by a parsed system file."""

    def __init__(self, spec, overrides=None):
        self.spec = spec.with_params(overrides) if overrides else spec
        self.params = dict(self.spec.params)
        self.name = self.spec.meta.get("name") or self.spec.source or "system-file"
        self._components = {Field.X: self.spec.field_x, Field.Y: self.spec.field_y}
        self._lie = {
            which: lie_derivative_exprs(comps, 3) for which, comps in self._components.items()
        }

    def components(self, field, x, y, z):
        p = Point3(x, y, z)
        return tuple(eval_expr(e, p, self.params) for e in self._components[field])

    def lie_derivatives(self, field, p, order=3):
        exprs = self._lie[field]
        if order > len(exprs):
            exprs = self._lie[field] = lie_derivative_exprs(self._components[field], order)
        return tuple(eval_expr(e, p, self.params) for e in exprs[:order])

    def lie_derivative_text(self, field, order):
        return pretty_print(self._lie[field][order - 1])

    def describe(self):
        params = ", ".join(f"{k}={v!r}" for k, v in sorted(self.params.items()))
        return f"{self.name} ({params})"
