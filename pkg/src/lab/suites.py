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

from src.errors import ConfigError
from src.lab.sampling import SampleSpec
from src.lab.stability import Verdict, classify_stability
from src.lab.verify import (
    SuiteReport, verify_curve_images, verify_monotone_growth, verify_reach_sliding, verify_strip_containment,
)

logger = logging.getLogger(__name__)

SUITE_NAMES = ("theorem-a", "curve-images", "strip", "monotone", "reach-sliding")

MONOTONE_START = (0.1, -0.05)


def expected_verdict(params):
    if params.lam >= 0.0:
        return Verdict.ASYMPTOTICALLY_STABLE
    return Verdict.NOT_LYAPUNOV_STABLE


def verify_theorem_a(params, sample_spec=None, config=None):
    """Compare the sampled verdict with the one the lambda-sign dichotomy predicts."""
    result = classify_stability(params, sample_spec, config)
    expected = expected_verdict(params)
    check = {
        "expected": expected.value,
        "verdict": result.verdict.value,
        "reason": result.reason,
        "passed": result.verdict is expected,
    }
    return SuiteReport(
        name="theorem-a",
        passed=check["passed"],
        checks=[check],
        params=params.as_dict(),
        details=result.to_report(),
    )


def applicable(name, params):
    if name in ("curve-images", "strip", "monotone"):
        return params.lam == 0.0
    if name == "reach-sliding":
        return params.lam >= 0.0
    return True


def run_suite(name, params, sample_spec=None, config=None, samples=None, seed=None):
    """Run one named suite. ``samples``/``seed`` override the suite defaults."""
    spec = (sample_spec or SampleSpec()).with_overrides(seed=seed)
    if name == "theorem-a":
        return verify_theorem_a(params, spec.with_overrides(count=samples), config)
    if name == "curve-images":
        return verify_curve_images(params, samples or 100, seed=spec.seed)
    if name == "strip":
        return verify_strip_containment(params, samples or 1000, seed=spec.seed)
    if name == "monotone":
        return verify_monotone_growth(params, MONOTONE_START)
    if name == "reach-sliding":
        return verify_reach_sliding(params, samples or spec.count, config, sample_spec=spec)
    raise ConfigError(f"unknown suite '{name}'")


def run_suites(names, params, sample_spec=None, config=None, samples=None, seed=None):
    """Run several suites; under ``all`` the suites that do not apply to lambda are skipped."""
    reports = []
    skipped = []
    selected = SUITE_NAMES if "all" in names else names
    for name in selected:
        if "all" in names and not applicable(name, params):
            skipped.append(name)
            continue
        logger.info("running suite %s", name)
        reports.append(run_suite(name, params, sample_spec, config, samples, seed))
    return reports, skipped
