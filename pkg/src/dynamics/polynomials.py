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
Real roots of the low-degree polynomials that give flight times.

Coefficients are ascending: ``coeffs[k]`` multiplies ``t**k``.
"""

import math

import numpy as np


def _trim(coeffs):
    coeffs = [float(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0.0:
        coeffs.pop()
    return coeffs


def _quadratic_roots(c0, c1, c2):
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0.0:
        # Rounding can push a double root slightly negative.
        if disc < -1e-14 * (c1 * c1 + abs(4.0 * c2 * c0)):
            return []
        disc = 0.0
    q = -0.5 * (c1 + math.copysign(math.sqrt(disc), c1))
    if q == 0.0:
        return [0.0, 0.0]
    return sorted([q / c2, c0 / q])


def _polish(coeffs, root, iterations=3):
    descending = coeffs[::-1]
    derivative = np.polyder(descending)
    for _ in range(iterations):
        slope = np.polyval(derivative, root)
        if slope == 0.0:
            break
        step = np.polyval(descending, root) / slope
        root -= step
        if abs(step) <= 4.0 * np.finfo(float).eps * max(1.0, abs(root)):
            break
    return float(root)


def real_roots(coeffs, imag_tol=1e-9):
    """Sorted real roots of a polynomial of degree <= 3 (ascending coefficients).

    The zero polynomial has no isolated roots and returns an empty list;
    callers decide whether that is degenerate.
    """
    coeffs = _trim(coeffs)
    degree = len(coeffs) - 1
    if degree <= 0:
        return []
    if degree == 1:
        return [-coeffs[0] / coeffs[1]]
    if degree == 2:
        return _quadratic_roots(*coeffs)
    roots = np.roots(coeffs[::-1])
    real = [
        _polish(coeffs, r.real)
        for r in roots
        if abs(r.imag) <= imag_tol * (1.0 + abs(r.real))
    ]
    return sorted(real)


def smallest_root_above(coeffs, t_min):
    """Smallest real root strictly greater than ``t_min``, or None."""
    for root in real_roots(coeffs):
        if root > t_min:
            return root
    return None


def is_zero_polynomial(coeffs):
    return not _trim(coeffs)


def evaluate(coeffs, t):
    result = 0.0
    for c in reversed(coeffs):
        result = result * t + c
    return result
