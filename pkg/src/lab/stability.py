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
Sample-based stability classification of the cusp-fold origin.

Lambda >= 0 can only be called AsymptoticallyStable, and only when every
sampled trajectory comes within ``dist_tol`` of the origin. Lambda < 0 can
only be called NotLyapunovStable, from a simulation-confirmed escape
certificate or a sampled trajectory that leaves ``escape_radius``. All
other outcomes are Inconclusive.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from src.dynamics.hybrid import EventKind, SimConfig, TerminalStatus, simulate
from src.errors import CertificateFailed, PsvfError, RegimeViolation
from src.lab.certificate import confirm_by_simulation, escape_certificate
from src.lab.sampling import SampleSpec, sample_ball
from src.models.system import NormalFormSystem

logger = logging.getLogger(__name__)


class Verdict(Enum):
    ASYMPTOTICALLY_STABLE = "AsymptoticallyStable"
    NOT_LYAPUNOV_STABLE = "NotLyapunovStable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SampleRecord:
    start: tuple
    branch: str
    status: str
    end_distance: float
    min_distance: float
    max_distance: float
    reached_sliding: bool
    converged: bool
    escaped: bool

    def to_report(self):
        return {
            "start": list(self.start),
            "branch": self.branch,
            "status": self.status,
            "end_distance": self.end_distance,
            "min_distance": self.min_distance,
            "max_distance": self.max_distance,
            "reached_sliding": self.reached_sliding,
            "converged": self.converged,
            "escaped": self.escaped,
        }


@dataclass
class StabilityVerdict:
    params: object
    verdict: Verdict
    sample_spec: SampleSpec
    config: SimConfig
    samples: list = field(default_factory=list)
    certificate: dict = None
    reason: str = ""

    @property
    def converged_fraction(self):
        if not self.samples:
            return 0.0
        return sum(1 for s in self.samples if s.converged) / len(self.samples)

    def to_report(self):
        return {
            "params": self.params.as_dict(),
            "verdict": self.verdict.value,
            "reason": self.reason,
            "seeds": [self.sample_spec.seed],
            "sample_spec": self.sample_spec.as_dict(),
            "config": self.config.as_dict(),
            "config_digest": self.config.digest(),
            "certificate": self.certificate,
            "converged_fraction": self.converged_fraction,
            "samples": [s.to_report() for s in self.samples],
        }


def _max_distance(traj):
    return max(float(np.linalg.norm(seg.points, axis=1).max()) for seg in traj.segments)


def _run_samples(system, spec, config, stop_radius):
    records = []
    for p in sample_ball(spec):
        try:
            branches = simulate(system, p, config, stop_radius=stop_radius)
        except PsvfError as err:
            logger.warning("sample %s failed: %s", p, err)
            records.append(SampleRecord(
                tuple(p.as_array()), "", type(err).__name__, p.norm(), p.norm(), p.norm(), False, False, False,
            ))
            continue
        for traj in branches:
            status = traj.terminal_status
            end = traj.end_point.norm()
            records.append(SampleRecord(
                start=tuple(float(v) for v in p.as_array()),
                branch=traj.branch,
                status=status.value,
                end_distance=end,
                min_distance=traj.min_distance(),
                max_distance=_max_distance(traj),
                reached_sliding=traj.has_event(EventKind.ENTER_SLIDING),
                converged=end <= spec.dist_tol * (1.0 + 1e-9) and status in (
                    TerminalStatus.STOPPED, TerminalStatus.PSEUDO_EQUILIBRIUM,
                ),
                escaped=status is TerminalStatus.DOMAIN_EXIT and end >= spec.escape_radius * (1.0 - 1e-9),
            ))
    return records


def classify_stability(params, sample_spec=None, config=None):
    """Classify the origin of the normal form with parameters ``params``.

    Raises RegimeViolation when the stability hypotheses fail.
    """
    if not params.satisfies_hypotheses:
        failed = ", ".join(params.failed_hypotheses()) or "d < 0"
        raise RegimeViolation(f"stability hypotheses fail for {params}: {failed}")
    spec = sample_spec or SampleSpec()
    config = config or SimConfig()
    system = NormalFormSystem(params)

    if params.lam >= 0.0:
        run_config = config.with_overrides(ball_radius=max(config.ball_radius, spec.domain_radius))
        samples = _run_samples(system, spec, run_config, stop_radius=spec.dist_tol)
        if samples and all(s.converged for s in samples):
            verdict, reason = Verdict.ASYMPTOTICALLY_STABLE, "every sample converged"
        else:
            missing = sum(1 for s in samples if not s.converged)
            verdict, reason = Verdict.INCONCLUSIVE, f"{missing} of {len(samples)} samples did not converge"
        logger.info("lambda=%r: %s (%s)", params.lam, verdict.value, reason)
        return StabilityVerdict(params, verdict, spec, run_config, samples, None, reason)

    run_config = config.with_overrides(ball_radius=spec.escape_radius)
    certificate = None
    confirmed = False
    try:
        cert = escape_certificate(params, spec.certificate_x0)
        check = confirm_by_simulation(cert, config)
        confirmed = check.confirmed
        certificate = dict(cert.to_report(), simulation=check.to_report())
    except CertificateFailed as err:
        logger.info("no escape certificate for %s: %s", params, err.inequality)
        certificate = {"failed": err.inequality}
    samples = _run_samples(system, spec, run_config, stop_radius=None)
    escaped = sum(1 for s in samples if s.escaped)
    if confirmed:
        verdict, reason = Verdict.NOT_LYAPUNOV_STABLE, "escape certificate confirmed by simulation"
    elif escaped:
        verdict, reason = Verdict.NOT_LYAPUNOV_STABLE, f"{escaped} samples left radius {spec.escape_radius!r}"
    else:
        verdict, reason = Verdict.INCONCLUSIVE, "no certificate and no escaping sample"
    logger.info("lambda=%r: %s (%s)", params.lam, verdict.value, reason)
    return StabilityVerdict(params, verdict, spec, run_config, samples, certificate, reason)
