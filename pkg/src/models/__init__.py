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

from .geometry import Point3, VectorValue, PlanarLine
from .params import ParamSet, CANONICAL, PARAM_NAMES, param_key
from .system import Field, PiecewiseSystem, NormalFormSystem, eval_normal_form_X, eval_normal_form_Y
from .regions import (
    RegionLabel, ContactType, SingularityType, TangencyClass,
    classify_region, classify_tangency, classify_line, contact_type, region_from_normals,
)
