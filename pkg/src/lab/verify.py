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
Numerical checks of the curve-image, containment, growth and reach-sliding
properties of the cusp-fold normal form.

Every verifier returns a SuiteReport; a failed property is a failed check
in the report, never an exception. Exceptions are kept for inputs the
property does not apply to (RegimeViolation, PreconditionError).
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from src.dynamics.hybrid import EventKind, SimConfig, TerminalStatus, integrate_to_event, simulate
from src.dynamics.return_map import first_return_map, iterate_return_map, OrbitStatus
from src.errors import PreconditionError, PsvfError, RegimeViolation
from src.lab.sampling import SampleSpec, sample_ball
from src.models.geometry import Point3
from src.models.system import Field, NormalFormSystem

logger = logging.getLogger(__name__)

ANALYTIC_TOL = 1e-12
SIMULATED_TOL = 1e-6


@dataclass
class SuiteReport:
    name: str
    passed: bool
    checks: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def failures(self):
        return [check for check in self.checks if not check.get("passed", False)]

    def to_report(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "params": dict(self.params),
            "details": dict(self.details),
            "checks": list(self.checks),
            "failures": len(self.failures),
        }


def _require_lambda_zero(params, suite):
    if params.lam != 0.0:
        raise RegimeViolation(f"suite {suite} requires lambda = 0, got {params.lam!r}")


def _require_hypotheses(params, suite):
    if not params.satisfies_hypotheses:
        failed = ", ".join(params.failed_hypotheses()) or "d < 0"
        raise RegimeViolation(f"suite {suite} requires the stability hypotheses (failed: {failed})")


def upper_curve(params, x):
    """Image of the fold parabola y = -x^2: y = -x^2/4 + 2(d/c)x."""
    return -x * x / 4.0 + 2.0 * params.d / params.c * x


def lower_curve(params, x):
    """Image of the half-line x = 0, y < 0: y = -x^2/3 + 2(d/c)x."""
    return -x * x / 3.0 + 2.0 * params.d / params.c * x


def parabola_flight_time(params, x0):
    return (4.0 * params.a - 3.0 * params.c) * x0 / (params.a * params.c)


def axis_flight_time(params, y0):
    return (2.0 * params.a - params.c) * math.sqrt(-3.0 * y0) / (params.a * params.c)


def _simulated_return(system, p, config):
    """Image of p and total flight time from the X-arc then Y-arc simulation."""
    _, first = integrate_to_event(system, Field.X, p, config)
    if first is None or first.kind is not EventKind.CROSS:
        return None
    _, second = integrate_to_event(system, Field.Y, first.point, config, t0=first.time)
    if second is None or second.kind is not EventKind.CROSS:
        return None
    return second.point, second.time


def _image_check(params, curve, p, target, expected_time, simulated, system, config):
    if simulated:
        found = _simulated_return(system, p, config)
        if found is None:
            return {"curve": curve, "source": list(p.xy()), "passed": False, "reason": "no simulated return"}
        image, time = found
        tol = SIMULATED_TOL
    else:
        result = first_return_map(params, p)
        image = result.point
        time = sum(result.flight_times) if result.flight_times else math.nan
        tol = ANALYTIC_TOL
    residual = abs(image.y - target(params, image.x))
    time_residual = abs(time - expected_time)
    passed = (
        residual <= tol * (1.0 + abs(image.y))
        and time_residual <= tol * (1.0 + expected_time)
        and image.x > 0.0
    )
    return {
        "curve": curve,
        "source": list(p.xy()),
        "image": list(image.xy()),
        "residual": residual,
        "flight_time": time,
        "time_residual": time_residual,
        "passed": bool(passed),
    }


def verify_curve_images(params, sample_count=100, seed=42, simulated=False, config=None):
    """Check where the return map sends the fold parabola and the negative y-axis.

    Points (x0, -x0^2) must land on the upper curve after a flight time of
    (4a - 3c) x0 / (ac); points (0, y0) must land on the lower curve after
    (2a - c) sqrt(-3 y0) / (ac).
    """
    _require_lambda_zero(params, "curve-images")
    _require_hypotheses(params, "curve-images")
    system = NormalFormSystem(params)
    config = config or SimConfig(ball_radius=1e4)
    rng = np.random.default_rng(seed)
    xs = rng.uniform(1e-3, 0.5, sample_count)
    ys = -rng.uniform(1e-3, 0.5, sample_count)

    checks = []
    for x0 in xs:
        x0 = float(x0)
        p = Point3.planar(x0, -(x0 ** 2))
        checks.append(_image_check(
            params, "parabola", p, upper_curve, parabola_flight_time(params, x0), simulated, system, config,
        ))
    for y0 in ys:
        y0 = float(y0)
        p = Point3.planar(0.0, y0)
        checks.append(_image_check(
            params, "axis", p, lower_curve, axis_flight_time(params, y0), simulated, system, config,
        ))
    residuals = [c.get("residual", math.inf) for c in checks]
    report = SuiteReport(
        name="curve-images",
        passed=all(c["passed"] for c in checks),
        checks=checks,
        params=params.as_dict(),
        details={
            "samples": sample_count,
            "seed": seed,
            "simulated": simulated,
            "max_residual": max(residuals) if residuals else 0.0,
        },
    )
    logger.info("curve images: %d checks, max residual %r", len(checks), report.details["max_residual"])
    return report


def verify_strip_containment(params, sample_count=1000, seed=42):
    """Images of crossing points with x > 0 lie strictly between the two image curves."""
    _require_lambda_zero(params, "strip")
    _require_hypotheses(params, "strip")
    rng = np.random.default_rng(seed)
    xs = rng.uniform(1e-3, 0.5, sample_count)
    gaps = rng.uniform(1e-4, 0.5, sample_count)

    checks = []
    violations = 0
    for x0, gap in zip(xs, gaps):
        x0, gap = float(x0), float(gap)
        q = Point3.planar(x0, -x0 * x0 - gap)
        image = first_return_map(params, q).point
        bounds = sorted((lower_curve(params, image.x), upper_curve(params, image.x)))
        inside = bounds[0] < image.y < bounds[1]
        if not inside:
            violations += 1
            checks.append({"source": list(q.xy()), "image": list(image.xy()), "bounds": bounds, "passed": False})
    return SuiteReport(
        name="strip",
        passed=violations == 0,
        checks=checks,
        params=params.as_dict(),
        details={
            "samples": sample_count,
            "seed": seed,
            "violations": violations,
            "violation_fraction": violations / sample_count if sample_count else 0.0,
        },
    )


def verify_monotone_growth(params, q0, max_iter=1000):
    """x grows strictly along the return-map orbit of a crossing point with x >= 0."""
    _require_lambda_zero(params, "monotone")
    x, y = (q0.x, q0.y) if isinstance(q0, Point3) else (float(q0[0]), float(q0[1]))
    if x < 0.0 or params.b * (y + x * x) < 0.0:
        raise PreconditionError(f"({x!r}, {y!r}) is not in the closure of the crossing region x > 0")
    orbit = iterate_return_map(params, (x, y), max_iter=max_iter)
    xs = orbit.xs
    steps = [
        {"n": n, "x": xs[n], "x_next": xs[n + 1], "passed": xs[n + 1] > xs[n]}
        for n in range(len(xs) - 1)
    ]
    failed = [step for step in steps if not step["passed"]]
    return SuiteReport(
        name="monotone",
        passed=not failed,
        checks=failed,
        params=params.as_dict(),
        details={
            "start": [x, y],
            "iterations": orbit.iterations,
            "status": orbit.status.value,
            "reached_sliding": orbit.status is OrbitStatus.REACHED_SLIDING,
            "xs": xs,
        },
    )


def verify_reach_sliding(params, sample_count=500, config=None, sample_spec=None):
    """Every trajectory from the sampling ball reaches the closure of the sliding region."""
    if params.lam < 0.0:
        raise RegimeViolation("suite reach-sliding requires lambda >= 0")
    _require_hypotheses(params, "reach-sliding")
    spec = (sample_spec or SampleSpec()).with_overrides(count=sample_count)
    config = config or SimConfig()
    # Orbits swing far out before the fold catches them; the ball only bounds the domain here.
    config = config.with_overrides(ball_radius=max(config.ball_radius, spec.domain_radius))
    system = NormalFormSystem(params)

    checks = []
    for p in sample_ball(spec):
        record = {"start": list(p.as_array()), "passed": False}
        try:
            branches = simulate(system, p, config, stop_on={EventKind.ENTER_SLIDING})
        except PsvfError as err:
            record["error"] = f"{type(err).__name__}: {err}"
            checks.append(record)
            continue
        outcomes = []
        for traj in branches:
            reached = traj.has_event(EventKind.ENTER_SLIDING) or (
                traj.terminal_status is TerminalStatus.PSEUDO_EQUILIBRIUM and traj.end_point.norm() <= spec.dist_tol
            )
            outcomes.append({"branch": traj.branch, "status": traj.terminal_status.value, "reached": reached})
        record["branches"] = outcomes
        record["passed"] = all(o["reached"] for o in outcomes)
        checks.append(record)

    reached = sum(1 for c in checks if c["passed"])
    return SuiteReport(
        name="reach-sliding",
        passed=reached == len(checks),
        checks=checks,
        params=params.as_dict(),
        details={
            "samples": len(checks),
            "reached": reached,
            "fraction": reached / len(checks) if checks else 1.0,
            "sample_spec": spec.as_dict(),
            "config": config.as_dict(),
            "config_digest": config.digest(),
        },
    )
