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

import hashlib
import json
import math
from dataclasses import asdict, dataclass, replace

import numpy as np

from src.errors import ConfigError
from src.models.geometry import Point3


@dataclass(frozen=True)
class SampleSpec:
    """How initial conditions are drawn around the origin.

    ``radius`` is the sampling ball, ``dist_tol`` the distance counted as
    convergence and ``escape_radius`` the distance counted as escape.
    Every ``plane_every``-th sample is moved onto the switching plane
    (0 disables this).
    """

    count: int = 500
    radius: float = 0.2
    seed: int = 42
    dist_tol: float = 1e-3
    escape_radius: float = 2.0
    domain_radius: float = 1e3
    certificate_x0: float = 0.2
    plane_every: int = 4

    def __post_init__(self):
        for name in ("count", "seed", "plane_every"):
            object.__setattr__(self, name, int(getattr(self, name)))
        for name in ("radius", "dist_tol", "escape_radius", "domain_radius", "certificate_x0"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise ConfigError(f"{name} must be positive, got {value!r}")
            object.__setattr__(self, name, value)
        if self.count < 0 or self.plane_every < 0:
            raise ConfigError("count and plane_every must be non-negative")
        if self.escape_radius <= self.radius:
            raise ConfigError("escape_radius must exceed the sampling radius")

    def with_overrides(self, **changes):
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes) if changes else self

    def as_dict(self):
        return asdict(self)

    def digest(self):
        payload = json.dumps(self.as_dict(), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def sample_ball(spec):
    """Seeded uniform samples of the closed ball of radius ``spec.radius``."""
    if spec.count == 0:
        return []
    rng = np.random.default_rng(spec.seed)
    directions = rng.normal(size=(spec.count, 3))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    radii = spec.radius * rng.random(spec.count) ** (1.0 / 3.0)
    points = directions * radii[:, None]
    if spec.plane_every:
        points[spec.plane_every - 1::spec.plane_every, 2] = 0.0
    return [Point3.from_array(row) for row in points]
