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

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.dynamics.flows import half_return
from src.errors import ComplexBranch, ComplexEigenvalues, DegenerateContact, DegenerateParameters, LambdaZero, NoReturn
from src.models.geometry import PlanarLine, Point3
from src.models.regions import classify_line
from src.models.system import Field, NormalFormSystem

logger = logging.getLogger(__name__)


class Branch(Enum):
    PRINCIPAL = "principal"
    LOCAL = "local"


class OrbitStatus(Enum):
    FIXED_POINT = "FixedPoint"
    REACHED_SLIDING = "ReachedSliding"
    STOPPED = "Stopped"
    LEFT_RADIUS = "LeftRadius"
    COMPLEX_BRANCH = "ComplexBranch"
    MAX_ITERATIONS = "MaxIterations"


@dataclass(frozen=True)
class ReturnMapResult:
    point: Point3
    radicand: float
    discriminant: float
    branch: Branch
    realizable: bool = False
    flight_times: tuple = None


@dataclass(frozen=True)
class ReturnMapEigen:
    xi_plus: float
    xi_minus: float
    omega_plus: float
    omega_minus: float
    delta: float
    jacobian: np.ndarray
    line_plus: PlanarLine
    line_minus: PlanarLine
    regions_plus: tuple
    regions_minus: tuple


@dataclass(frozen=True)
class ReturnOrbit:
    points: tuple
    status: OrbitStatus

    @property
    def iterations(self):
        return len(self.points) - 1

    @property
    def xs(self):
        return [p.x for p in self.points]


def _planar(q):
    if isinstance(q, Point3):
        return q.x, q.y
    x, y = q
    return float(x), float(y)


def _require_fold_coefficient(params):
    if params.a == 0.0:
        raise DegenerateParameters("the first-return map needs a != 0")


def radicand(params, q):
    a, lam = params.a, params.lam
    x, y = _planar(q)
    return 9.0 * lam * lam + 36.0 * a * lam * x - 12.0 * a * a * (x * x + 4.0 * y)


def _geometric_return(params, q):
    """Compose the two half-returns; None when the construction is not realized."""
    p = Point3.planar(*q)
    try:
        landing, t1 = half_return(params, Field.X, p)
        if t1 <= 0.0 or landing.x >= 0.0:
            return None
        image, t2 = half_return(params, Field.Y, landing)
    except (NoReturn, DegenerateContact):
        return None
    if t2 <= 0.0:
        return None
    return image, (t1, t2)


def first_return_map(params, q, branch=Branch.PRINCIPAL):
    """Image of q under the X-then-Y return to the plane, in closed form.

    The principal branch takes the non-negative square root. The local
    branch takes sgn(lambda) times it, which fixes the origin for every
    lambda. ``realizable`` reports whether the geometric composition of
    the two half-returns exists and agrees with the formula.
    """
    _require_fold_coefficient(params)
    a, c, d, lam = params.a, params.c, params.d, params.lam
    x, y = _planar(q)
    rad = radicand(params, (x, y))
    if rad < 0.0:
        raise ComplexBranch(rad)
    sign = 1.0 if branch is Branch.PRINCIPAL or lam == 0.0 else math.copysign(1.0, lam)
    delta = 3.0 * lam - sign * math.sqrt(rad)
    x1 = (2.0 * a * x + delta) / (4.0 * a)
    y1 = y + d * (2.0 * a * x + delta) / (2.0 * a * c) + lam * (-6.0 * a * x - delta) / (4.0 * a * a)
    image = Point3.planar(x1, y1)

    geometric = _geometric_return(params, (x, y))
    realizable = False
    flight_times = None
    if geometric is not None:
        landing, times = geometric
        gap = math.hypot(landing.x - x1, landing.y - y1)
        if gap <= 1e-9 * (1.0 + math.hypot(x1, y1)):
            realizable = True
            flight_times = times
    return ReturnMapResult(image, rad, delta, branch, realizable, flight_times)


def parabola_image(params, x0):
    """Image of the fold-curve point (x0, -x0^2) through its visible X-arc and the Y-arc."""
    _require_fold_coefficient(params)
    a, c, d, lam = params.a, params.c, params.d, params.lam
    x1 = 2.0 * x0 + 3.0 * lam / (2.0 * a)
    y1 = -x0 ** 2 - 3.0 * lam * (lam + 2.0 * a * x0) / (2.0 * a * a) + d * (3.0 * lam + 4.0 * a * x0) / (a * c)
    return Point3.planar(x1, y1)


def return_map_jacobian_origin(params):
    """Derivative of the local branch at the origin (determinant one)."""
    _require_fold_coefficient(params)
    a, c, d, lam = params.a, params.c, params.d, params.lam
    if lam == 0.0:
        raise LambdaZero("the return map is not differentiable at the origin when lambda = 0")
    return np.array([
        [-1.0, 2.0 * a / lam],
        [-2.0 * d / c, -1.0 + 4.0 * a * d / (c * lam)],
    ])


def return_map_eigen_origin(params, h=1e-3, tol=1e-9):
    """Eigenvalues of the return map at the origin and the lines x = omega*y they span."""
    jacobian = return_map_jacobian_origin(params)
    a, c, d, lam = params.a, params.c, params.d, params.lam
    if d == 0.0:
        raise DegenerateParameters("invariant lines need d != 0")
    ad = a * d
    delta = ad * ad - ad * c * lam
    if delta < 0.0:
        raise ComplexEigenvalues(delta)
    root = math.sqrt(delta)

    # The product of the eigenvalues is one and the product of
    # (ad + root)(ad - root) is ad*c*lambda: use whichever form does not cancel.
    centre = 2.0 * ad - c * lam
    if centre >= 0.0:
        xi_plus = (centre + 2.0 * root) / (c * lam)
        xi_minus = 1.0 / xi_plus
    else:
        xi_minus = (centre - 2.0 * root) / (c * lam)
        xi_plus = 1.0 / xi_minus
    if ad >= 0.0:
        omega_plus = a * c / (ad + root)
        omega_minus = (ad + root) / (d * lam)
    else:
        omega_plus = (ad - root) / (d * lam)
        omega_minus = a * c / (ad - root)

    system = NormalFormSystem(params)
    line_plus = PlanarLine((omega_plus, 1.0))
    line_minus = PlanarLine((omega_minus, 1.0))
    return ReturnMapEigen(
        xi_plus=xi_plus,
        xi_minus=xi_minus,
        omega_plus=omega_plus,
        omega_minus=omega_minus,
        delta=delta,
        jacobian=jacobian,
        line_plus=line_plus,
        line_minus=line_minus,
        regions_plus=classify_line(system, line_plus, h, tol),
        regions_minus=classify_line(system, line_minus, h, tol),
    )


def _same_point(p, q, tol=1e-15):
    return abs(p.x - q.x) <= tol * (1.0 + abs(q.x)) and abs(p.y - q.y) <= tol * (1.0 + abs(q.y))


def in_sliding_closure(params, q):
    """True when X3 <= 0 <= Y3 at q."""
    x, y = _planar(q)
    return params.b * (y + x * x) <= 0.0 <= x


def iterate_return_map(params, q0, max_iter=1000, radius=math.inf, stop=None, branch=Branch.PRINCIPAL):
    """Iterate the first-return map from q0.

    Iteration ends at a fixed point, when an image satisfies ``stop``
    (default: it lies in the closure of the sliding region), when an image
    leaves the disc of ``radius``, on a complex square root, or after
    ``max_iter`` images.
    """
    predicate = stop or (lambda q: in_sliding_closure(params, q))
    hit_status = OrbitStatus.STOPPED if stop else OrbitStatus.REACHED_SLIDING
    current = Point3.planar(*_planar(q0))
    points = [current]
    status = OrbitStatus.MAX_ITERATIONS
    for _ in range(max_iter):
        try:
            image = first_return_map(params, current, branch).point
        except ComplexBranch as err:
            logger.debug("complex branch after %d iterations (radicand %r)", len(points) - 1, err.radicand)
            status = OrbitStatus.COMPLEX_BRANCH
            break
        if _same_point(image, current):
            status = OrbitStatus.FIXED_POINT
            break
        points.append(image)
        if math.hypot(image.x, image.y) > radius:
            status = OrbitStatus.LEFT_RADIUS
            break
        if predicate(image):
            status = hit_status
            break
        current = image
    return ReturnOrbit(tuple(points), status)
