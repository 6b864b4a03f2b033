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
Closed-form flows of the normal-form fields.

Both fields have constant planar components, so x and y are affine in t
and the normal coordinate is a polynomial: cubic for X, quadratic for Y.
"""

from dataclasses import dataclass

from src.dynamics import polynomials
from src.errors import DegenerateContact, NoReturn, OffSwitchingPlane
from src.models.geometry import Point3
from src.models.system import Field

PLANE_TOL = 1e-12


@dataclass(frozen=True)
class PolyFlow:
    """Orbit of one field through ``start`` in polynomial form."""

    field: Field
    start: Point3
    vx: float
    vy: float
    z_coeffs: tuple

    def at(self, t):
        return Point3(
            self.start.x + self.vx * t,
            self.start.y + self.vy * t,
            polynomials.evaluate(self.z_coeffs, t),
        )

    def z(self, t):
        return polynomials.evaluate(self.z_coeffs, t)


def polyflow(params, field, p0):
    x0, y0, z0 = p0.x, p0.y, p0.z
    if field is Field.X:
        a, b, lam = params.a, params.b, params.lam
        coeffs = (z0, b * (y0 + x0 ** 2), b * (a * x0 + 0.5 * lam), b * a * a / 3.0)
        return PolyFlow(field, p0, a, lam, coeffs)
    c, d = params.c, params.d
    return PolyFlow(field, p0, c, d, (z0, x0, 0.5 * c, 0.0))


def flow_X(params, p0, t):
    return polyflow(params, Field.X, p0).at(t)


def flow_Y(params, p0, t):
    return polyflow(params, Field.Y, p0).at(t)


def return_time(params, field, p0, t_min=1e-12, direction=1):
    """Time of the next return of the orbit through ``p0`` to the plane.

    With ``direction=1`` the smallest root t > t_min is returned; with
    ``direction=-1`` the orbit is followed backwards and the result is the
    negative root closest to zero (|t| > t_min). None when there is no return.
    """
    if abs(p0.z) > PLANE_TOL:
        raise OffSwitchingPlane(p0.z, PLANE_TOL)
    # z(0) = 0: divide the root at t = 0 out.
    deflated = list(polyflow(params, field, p0).z_coeffs[1:])
    if polynomials.is_zero_polynomial(deflated):
        raise DegenerateContact(f"{field.value}-orbit through {p0} stays on the plane")
    if direction < 0:
        deflated = [c if k % 2 == 0 else -c for k, c in enumerate(deflated)]
    root = polynomials.smallest_root_above(deflated, t_min)
    if root is None:
        return None
    return root if direction > 0 else -root


def _arc_direction(params, field, p, tol):
    """+1 if the real arc of ``field`` at p lies ahead in time, -1 if behind."""
    if field is Field.X:
        normal = params.b * (p.y + p.x ** 2)
        curvature = params.b * (2.0 * params.a * p.x + params.lam)
        scale = 1.0 + max(abs(params.a), abs(params.lam), abs(normal))
        inward = 1.0
    else:
        normal = p.x
        curvature = params.c
        scale = 1.0 + max(abs(params.c), abs(params.d), abs(normal))
        inward = -1.0
    if abs(normal) > tol * scale:
        return 1 if inward * normal > 0.0 else -1
    if inward * curvature > 0.0:
        return 1
    raise NoReturn(f"{field.value} has an invisible fold at {p}: no arc on its side of the plane")


def half_return(params, field, p, tol=1e-12):
    """Other end of the arc of ``field`` through p that lies in the field's half-space.

    Returns (point, signed flight time). Applied twice it gives back p.
    """
    p = Point3(p.x, p.y, 0.0)
    direction = _arc_direction(params, field, p, tol)
    t = return_time(params, field, p, direction=direction)
    if t is None:
        raise NoReturn(f"{field.value}-orbit through {p} does not return")
    q = polyflow(params, field, p).at(t)
    return Point3(q.x, q.y, 0.0), t


def half_return_X(params, p):
    return half_return(params, Field.X, p)[0]


def half_return_Y(params, p):
    return half_return(params, Field.Y, p)[0]
