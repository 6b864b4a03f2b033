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

from abc import ABC, abstractmethod
from enum import Enum

from src.models.geometry import VectorValue
from src.models.params import ParamSet


class Field(Enum):
    X = "X"
    Y = "Y"


class PiecewiseSystem(ABC):
    """Filippov system Z = (X, Y) switching across the plane z = 0.

    X governs z >= 0 and Y governs z <= 0. Subclasses supply raw component
    evaluation and the Lie derivatives of the function h(x, y, z) = z.
    """

    name = "system"

    @abstractmethod
    def components(self, field, x, y, z):
        """Return the three components of ``field`` at (x, y, z) as floats."""

    @abstractmethod
    def lie_derivatives(self, field, p, order=3):
        """Return (L h, L^2 h, ..., L^order h) for h = z at ``p``."""

    def field_x(self, p):
        return VectorValue(*self.components(Field.X, p.x, p.y, p.z))

    def field_y(self, p):
        return VectorValue(*self.components(Field.Y, p.x, p.y, p.z))

    def field(self, which, p):
        return self.field_x(p) if which is Field.X else self.field_y(p)

    def normals(self, x, y, z=0.0):
        """(X3, Y3) at a point; used by the hot loops of the simulator."""
        return self.components(Field.X, x, y, z)[2], self.components(Field.Y, x, y, z)[2]

    def describe(self):
        return self.name


class NormalFormSystem(PiecewiseSystem):
    """Built-in cusp-fold family evaluated in closed form."""

    def __init__(self, params: ParamSet):
        self.params = params
        self.name = f"normal-form({params})"

    def components(self, field, x, y, z):
        p = self.params
        if field is Field.X:
            return (p.a, p.lam, p.b * (y + x ** 2))
        return (p.c, p.d, x)

    def lie_derivatives(self, field, p, order=3):
        prm = self.params
        if field is Field.X:
            values = (
                prm.b * (p.y + p.x ** 2),
                prm.b * (2.0 * prm.a * p.x + prm.lam),
                2.0 * prm.a ** 2 * prm.b,
            )
        else:
            values = (p.x, prm.c, 0.0)
        if order <= 3:
            return values[:order]
        return values + (0.0,) * (order - 3)

    def describe(self):
        return f"normal form with {self.params}"


def eval_normal_form_X(params, p):
    return NormalFormSystem(params).field_x(p)


def eval_normal_form_Y(params, p):
    return NormalFormSystem(params).field_y(p)
