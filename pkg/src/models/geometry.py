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

import math
from dataclasses import dataclass

import numpy as np

from src.errors import NonFiniteValue


def _require_finite(name, *values):
    for value in values:
        if not math.isfinite(value):
            raise NonFiniteValue(f"{name} has a non-finite component: {values!r}")


@dataclass(frozen=True)
class Point3:
    """A point of R^3. Points on the switching plane have z == 0."""

    x: float
    y: float
    z: float = 0.0

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite("Point3", self.x, self.y, self.z)

    @classmethod
    def from_array(cls, values):
        x, y, z = (float(v) for v in values)
        return cls(x, y, z)

    @classmethod
    def planar(cls, x, y):
        """Point of the switching plane with coordinates (x, y)."""
        return cls(float(x), float(y), 0.0)

    def as_array(self):
        return np.array([self.x, self.y, self.z], dtype=float)

    def xy(self):
        return (self.x, self.y)

    def norm(self):
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def on_plane(self):
        return Point3(self.x, self.y, 0.0)

    def __str__(self):
        return f"({self.x!r}, {self.y!r}, {self.z!r})"


@dataclass(frozen=True)
class VectorValue:
    """Value of a vector field at a point. ``v3`` is the normal component."""

    v1: float
    v2: float
    v3: float

    def __post_init__(self):
        _require_finite("VectorValue", self.v1, self.v2, self.v3)

    @property
    def normal(self):
        return self.v3

    def as_array(self):
        return np.array([self.v1, self.v2, self.v3], dtype=float)

    def norm_inf(self):
        return max(abs(self.v1), abs(self.v2), abs(self.v3))


@dataclass(frozen=True)
class PlanarLine:
    """Line through the origin of the switching plane, spanned by ``direction``."""

    direction: tuple

    def __post_init__(self):
        dx, dy = self.direction
        _require_finite("PlanarLine", dx, dy)
        if dx == 0.0 and dy == 0.0:
            raise ValueError("PlanarLine needs a non-zero direction")
        object.__setattr__(self, "direction", (float(dx), float(dy)))

    @property
    def slope(self):
        """dy/dx, or None for the vertical line x = 0."""
        dx, dy = self.direction
        if dx == 0.0:
            return None
        return dy / dx

    def contains(self, x, y, tol=1e-12):
        dx, dy = self.direction
        scale = math.hypot(dx, dy)
        return abs(dx * y - dy * x) / scale <= tol * (1.0 + math.hypot(x, y))

    def sample(self, h=1e-3):
        """Two points of the line, one on each side of the origin.

        Points are taken at x = +h and x = -h unless the line is vertical,
        in which case y = +h and y = -h are used.
        """
        dx, dy = self.direction
        if dx == 0.0:
            return Point3.planar(0.0, h), Point3.planar(0.0, -h)
        s = dy / dx
        return Point3.planar(h, s * h), Point3.planar(-h, -s * h)

    def __str__(self):
        s = self.slope
        return "x = 0" if s is None else f"y = {s!r} x"
