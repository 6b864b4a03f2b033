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

from .polynomials import real_roots, smallest_root_above
from .flows import PolyFlow, polyflow, flow_X, flow_Y, return_time, half_return, half_return_X, half_return_Y
from .sliding import (
    SlidingEigen, sliding_field, normalized_sliding_field, convex_weight,
    is_pseudo_equilibrium, sliding_jacobian_origin, sliding_eigen_origin,
)
from .return_map import (
    Branch, OrbitStatus, ReturnMapResult, ReturnMapEigen, ReturnOrbit,
    first_return_map, parabola_image, return_map_jacobian_origin, return_map_eigen_origin,
    iterate_return_map, in_sliding_closure,
)
from .hybrid import (
    Mode, EventKind, TerminalStatus, EscapePolicy, SimConfig, Segment, Event, HybridTrajectory,
    integrate_to_event, slide, simulate,
)
