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
Geometric certificate that the origin is not stable when lambda < 0.

Start at p0 = (x0, -x0^2) on the fold parabola, follow the X-arc and the
Y-arc to p1, and compare p1 with the tangent line r of the fold through p0
(direction (a x0, lambda x0)) along the vertical line s through p1. The
certificate holds when p1 lies below r and the orbit comes back farther
from the origin than it started.
"""

import logging
import math
from dataclasses import dataclass

from src.dynamics.hybrid import EventKind, SimConfig, integrate_to_event, slide
from src.dynamics.return_map import parabola_image
from src.errors import CertificateFailed, PsvfError
from src.models.geometry import Point3
from src.models.regions import RegionLabel, classify_region
from src.models.system import Field, NormalFormSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EscapeCertificate:
    params: object
    x0: float
    p0: Point3
    p1: Point3
    p2: Point3
    p3: Point3
    tangent_direction: tuple
    p1_region: RegionLabel
    # "V-" when p1 lies below the tangent line r, "V+" otherwise.
    side: str
    d0: float
    d2: float
    sliding_used: bool

    @property
    def margin(self):
        return self.d2 - self.d0

    def to_report(self):
        return {
            "x0": self.x0,
            "p0": list(self.p0.xy()),
            "p1": list(self.p1.xy()),
            "p2": list(self.p2.xy()),
            "p3": list(self.p3.xy()),
            "tangent_direction": list(self.tangent_direction),
            "p1_region": self.p1_region.value,
            "side": self.side,
            "d0": self.d0,
            "d2": self.d2,
            "margin": self.margin,
            "sliding_used": self.sliding_used,
        }


@dataclass(frozen=True)
class CertificateCheck:
    p2_simulated: Point3
    margin: float
    deviation: float

    @property
    def confirmed(self):
        return self.margin > 0.0 and self.deviation <= 1e-6

    def to_report(self):
        return {
            "p2_simulated": list(self.p2_simulated.xy()),
            "margin": self.margin,
            "deviation": self.deviation,
            "confirmed": self.confirmed,
        }


def witness_height(params, x0):
    """y-coordinate where the tangent line r meets the vertical line through p1."""
    lam, a = params.lam, params.a
    return -x0 * x0 + (lam / a) * (3.0 * lam / (2.0 * a) + x0)


def _sliding_exit(system, p, config):
    """Point where the sliding orbit through p reaches the fold parabola."""
    _, event, status = slide(system, p, config)
    if event is None or event.kind is not EventKind.EXIT_SLIDING or event.detail != "S_X":
        reason = status.value if status else (event.kind.value if event else "no event")
        raise CertificateFailed(f"sliding orbit from p1 does not reach the fold parabola ({reason})")
    return event.point


def escape_certificate(params, x0=0.2, config=None):
    """Build and validate the escape certificate for a negative lambda."""
    if params.lam >= 0.0:
        raise CertificateFailed(f"lambda < 0 (got {params.lam!r})")
    if not params.satisfies_hypotheses:
        raise CertificateFailed("stability hypotheses " + ", ".join(params.failed_hypotheses() or ["d < 0"]))
    if x0 <= 0.0:
        raise CertificateFailed(f"x0 > 0 (got {x0!r})")
    a, lam = params.a, params.lam
    if a * x0 * 2.0 + lam >= 0.0:
        # b < 0: the fold at p0 must be visible for the X-arc to exist.
        raise CertificateFailed("visible fold at p0: 2 a x0 + lambda < 0")

    system = NormalFormSystem(params)
    p0 = Point3.planar(x0, -x0 * x0)
    p1 = parabola_image(params, x0)
    y3 = witness_height(params, x0)
    p3 = Point3.planar(p1.x, y3)
    if not p1.y < y3:
        raise CertificateFailed(f"y1 < y3 ({p1.y!r} >= {y3!r})")

    region = classify_region(system, p1)
    sliding_used = region is RegionLabel.SLIDING
    if sliding_used:
        p2 = _sliding_exit(system, p1, config or SimConfig(ball_radius=max(10.0, 10.0 * (1.0 + p1.norm()))))
    else:
        p2 = p1
    d0, d2 = p0.norm(), p2.norm()
    if not d2 > d0:
        raise CertificateFailed(f"d(p2, 0) > d(p0, 0) ({d2!r} <= {d0!r})")
    cert = EscapeCertificate(
        params=params,
        x0=x0,
        p0=p0,
        p1=p1,
        p2=p2,
        p3=p3,
        tangent_direction=(a * x0, lam * x0),
        p1_region=region,
        side="V-",
        d0=d0,
        d2=d2,
        sliding_used=sliding_used,
    )
    logger.info("escape certificate at x0=%r: d0=%r d2=%r (%s)", x0, d0, d2, region.value)
    return cert


def confirm_by_simulation(cert, config=None):
    """Re-derive p2 by integrating the X-arc, the Y-arc and (if used) the slide."""
    radius = max(config.ball_radius if config else 0.0, 10.0 * (1.0 + cert.d2))
    config = (config or SimConfig()).with_overrides(ball_radius=radius)
    system = NormalFormSystem(cert.params)
    _, first = integrate_to_event(system, Field.X, cert.p0, config)
    if first is None or first.kind is not EventKind.CROSS:
        raise CertificateFailed("simulated X-arc from p0 does not return to the plane")
    _, second = integrate_to_event(system, Field.Y, first.point, config, t0=first.time)
    if second is None or second.kind is not EventKind.CROSS:
        raise CertificateFailed("simulated Y-arc does not return to the plane")
    p2 = second.point
    if cert.sliding_used:
        try:
            p2 = _sliding_exit(system, p2, config)
        except PsvfError as err:
            raise CertificateFailed(str(err)) from err
    deviation = math.hypot(p2.x - cert.p2.x, p2.y - cert.p2.y)
    return CertificateCheck(p2_simulated=p2, margin=p2.norm() - cert.d0, deviation=deviation)
