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

from dataclasses import dataclass
from enum import Enum

from src.errors import OffSwitchingPlane
from src.models.system import Field


class RegionLabel(Enum):
    CROSSING_PLUS = "CrossingPlus"
    CROSSING_MINUS = "CrossingMinus"
    SLIDING = "Sliding"
    ESCAPING = "Escaping"
    TANGENTIAL = "Tangential"

    @property
    def is_crossing(self):
        return self in (RegionLabel.CROSSING_PLUS, RegionLabel.CROSSING_MINUS)


class ContactType(Enum):
    TRANSVERSAL = "Transversal"
    FOLD_VISIBLE = "FoldVisible"
    FOLD_INVISIBLE = "FoldInvisible"
    CUSP = "Cusp"
    HIGHER_ORDER = "HigherOrder"

    @property
    def is_fold(self):
        return self in (ContactType.FOLD_VISIBLE, ContactType.FOLD_INVISIBLE)


class SingularityType(Enum):
    NONE = "None"
    FOLD = "Fold"
    TWO_FOLD = "TwoFold"
    CUSP_FOLD = "CuspFold"
    OTHER = "Other"


@dataclass(frozen=True)
class TangencyClass:
    x: ContactType
    y: ContactType
    combined: SingularityType

    def __str__(self):
        return f"X: {self.x.value}, Y: {self.y.value} ({self.combined.value})"


def region_from_normals(x3, y3):
    """Region of a point from the signs of X3 and Y3 (both non-zero)."""
    if x3 > 0.0 and y3 > 0.0:
        return RegionLabel.CROSSING_PLUS
    if x3 < 0.0 and y3 < 0.0:
        return RegionLabel.CROSSING_MINUS
    if x3 < 0.0 < y3:
        return RegionLabel.SLIDING
    return RegionLabel.ESCAPING


def _scale(values):
    return 1.0 + max(abs(v) for v in values)


def _require_on_plane(p, tol):
    if abs(p.z) > tol:
        raise OffSwitchingPlane(p.z, tol)


def classify_region(system, p, tol=1e-9):
    """Label a point of the switching plane.

    A normal component counts as zero when it is within ``tol`` times
    (1 + sup-norm of that field at p).
    """
    _require_on_plane(p, tol)
    xv = system.components(Field.X, p.x, p.y, 0.0)
    yv = system.components(Field.Y, p.x, p.y, 0.0)
    if abs(xv[2]) <= tol * _scale(xv) or abs(yv[2]) <= tol * _scale(yv):
        return RegionLabel.TANGENTIAL
    return region_from_normals(xv[2], yv[2])


def contact_type(system, field, p, tol=1e-9):
    """Order of contact of ``field`` with the plane at ``p``."""
    scale = _scale(system.components(field, p.x, p.y, 0.0))
    first, second, third = system.lie_derivatives(field, p, order=3)
    if abs(first) > tol * scale:
        return ContactType.TRANSVERSAL
    if abs(second) > tol * scale:
        # X lives above the plane, Y below: a visible fold bends the orbit
        # into the field's own half-space.
        visible = second > 0.0 if field is Field.X else second < 0.0
        return ContactType.FOLD_VISIBLE if visible else ContactType.FOLD_INVISIBLE
    if abs(third) > tol * scale:
        return ContactType.CUSP
    return ContactType.HIGHER_ORDER


def _combine(cx, cy):
    kinds = {cx, cy}
    folds = sum(1 for c in (cx, cy) if c.is_fold)
    if kinds == {ContactType.TRANSVERSAL}:
        return SingularityType.NONE
    if folds == 2:
        return SingularityType.TWO_FOLD
    if folds == 1 and ContactType.TRANSVERSAL in kinds:
        return SingularityType.FOLD
    if folds == 1 and ContactType.CUSP in kinds:
        return SingularityType.CUSP_FOLD
    return SingularityType.OTHER


def classify_tangency(system, p, tol=1e-9):
    """Contact classes of X and Y with the plane at ``p`` and their combination.

    A point where both fields are transversal gets ``SingularityType.NONE``.
    """
    _require_on_plane(p, tol)
    p = p.on_plane()
    cx = contact_type(system, Field.X, p, tol)
    cy = contact_type(system, Field.Y, p, tol)
    return TangencyClass(cx, cy, _combine(cx, cy))


def classify_line(system, line, h=1e-3, tol=1e-9):
    """Regions of the two sample points of ``line`` at distance ``h`` from the origin.

    Returns (label on the +h side, label on the -h side).
    """
    plus, minus = line.sample(h)
    return classify_region(system, plus, tol), classify_region(system, minus, tol)
