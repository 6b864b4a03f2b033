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

from .sampling import SampleSpec, sample_ball
from .verify import (
    SuiteReport, verify_curve_images, verify_strip_containment, verify_monotone_growth, verify_reach_sliding,
)
from .certificate import EscapeCertificate, CertificateCheck, escape_certificate, confirm_by_simulation
from .stability import Verdict, SampleRecord, StabilityVerdict, classify_stability
from .sweep import SweepRow, FIELDNAMES, parse_range, parameter_grid, evaluate_cell, run_sweep
from .suites import SUITE_NAMES, run_suite, run_suites, verify_theorem_a
