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
Filippov sliding vector field on the switching plane.

On the sliding region the flow follows the convex combination of X and Y
that is tangent to the plane:

    Z^s = (Y3 * X - X3 * Y) / (Y3 - X3)

Dropping the positive denominator gives the normalized field, which has
the same orbits on the sliding region and is polynomial for the normal form.
"""

import math
from dataclasses import dataclass

import numpy as np

from src.errors import ComplexEigenvalues, DegenerateDenominator
from src.models.geometry import PlanarLine, VectorValue
from src.models.regions import classify_line
from src.models.system import Field, NormalFormSystem


def normalized_components(system, x, y):
    xv = system.components(Field.X, x, y, 0.0)
    yv = system.components(Field.Y, x, y, 0.0)
    return (yv[2] * xv[0] - xv[2] * yv[0], yv[2] * xv[1] - xv[2] * yv[1])


def normalized_sliding_field(system, p):
    return normalized_components(system, p.x, p.y)


def sliding_field(system, p, tol=1e-12):
    xv = system.components(Field.X, p.x, p.y, 0.0)
    yv = system.components(Field.Y, p.x, p.y, 0.0)
    denominator = yv[2] - xv[2]
    if abs(denominator) <= tol * (1.0 + abs(xv[2]) + abs(yv[2])):
        raise DegenerateDenominator(f"Y3 - X3 = {denominator!r} at {p}")
    return VectorValue(
        (yv[2] * xv[0] - xv[2] * yv[0]) / denominator,
        (yv[2] * xv[1] - xv[2] * yv[1]) / denominator,
        0.0,
    )


def convex_weight(system, p, tol=1e-12):
    """Weight alpha with Z^s = alpha * X + (1 - alpha) * Y."""
    x3, y3 = system.normals(p.x, p.y)
    denominator = y3 - x3
    if abs(denominator) <= tol * (1.0 + abs(x3) + abs(y3)):
        raise DegenerateDenominator(f"Y3 - X3 = {denominator!r} at {p}")
    return y3 / denominator


def is_pseudo_equilibrium(system, p, tol=1e-9):
    f1, f2 = normalized_sliding_field(system, p)
    return max(abs(f1), abs(f2)) <= tol


@dataclass(frozen=True)
class SlidingEigen:
    """Eigen-data of the normalized sliding field at the origin.

    ``eig1 <= eig2``; ``vec_i`` is scaled to (bc/(a - eig_i), 1) unless its
    second component vanishes.
    """

    eig1: float
    eig2: float
    vec1: tuple
    vec2: tuple
    line1: PlanarLine
    line2: PlanarLine
    delta: float
    regions1: tuple
    regions2: tuple


def sliding_jacobian_origin(params):
    a, b, c, d, lam = params.a, params.b, params.c, params.d, params.lam
    return np.array([[a, -b * c], [lam, -d * b]])


def _eigenvector(params, eig):
    bc = params.b * params.c
    second = params.a - eig
    if abs(second) <= 1e-12 * (abs(params.a) + abs(eig) + abs(bc)):
        return (1.0, 0.0)
    return (bc / second, 1.0)


def sliding_eigen_origin(params, h=1e-3, tol=1e-9):
    a, b, c, d, lam = params.a, params.b, params.c, params.d, params.lam
    delta = (a + b * d) ** 2 - 4.0 * b * c * lam
    if delta < 0.0:
        raise ComplexEigenvalues(delta)
    root = math.sqrt(delta)
    eig1 = (a - b * d - root) / 2.0
    eig2 = (a - b * d + root) / 2.0
    vec1 = _eigenvector(params, eig1)
    vec2 = _eigenvector(params, eig2)
    line1 = PlanarLine(vec1)
    line2 = PlanarLine(vec2)
    system = NormalFormSystem(params)
    return SlidingEigen(
        eig1=eig1,
        eig2=eig2,
        vec1=vec1,
        vec2=vec2,
        line1=line1,
        line2=line2,
        delta=delta,
        regions1=classify_line(system, line1, h, tol),
        regions2=classify_line(system, line2, h, tol),
    )
