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
Exception hierarchy shared by every package under src/.

Library code raises these; the command line maps them to exit codes.
"""


class PsvfError(Exception):
    """Base class for all errors raised by the library."""


class NonFiniteValue(PsvfError, ValueError):
    """A coordinate or vector component is NaN or infinite."""


class RegimeViolation(PsvfError, ValueError):
    """Parameters fail the hypotheses an operation requires."""


class DegenerateParameters(RegimeViolation):
    """Parameters make the normal form degenerate (b = 0 or c = 0, ...)."""


class OffSwitchingPlane(PsvfError, ValueError):
    """A point that must lie on z = 0 does not."""

    def __init__(self, z, tol):
        super().__init__(f"point is off the switching plane: |z| = {abs(z):.3e} > {tol:.1e}")
        self.z = z
        self.tol = tol


class PreconditionError(PsvfError, ValueError):
    """An operation was called on an input outside its domain."""


class ConfigError(PsvfError, ValueError):
    """Invalid simulation or sampling configuration."""


# --- field DSL ---

class DslError(PsvfError):
    """Base class for expression and system-file errors."""


class DslSyntaxError(DslError):
    """Malformed expression or system file.

    ``offset`` is the 0-based character offset inside the expression text.
    ``line``/``column`` are 1-based and only set for errors inside a file.
    """

    def __init__(self, message, offset=0, expected=None, line=None, column=None):
        self.message = message
        self.offset = offset
        self.expected = expected
        self.line = line
        self.column = column
        super().__init__(self._format())

    def _format(self):
        where = f"offset {self.offset}"
        if self.line is not None:
            where = f"line {self.line}, column {self.column}"
        text = f"{self.message} at {where}"
        if self.expected:
            text += f" (expected {self.expected})"
        return text

    def located(self, line, column):
        """Return a copy positioned inside a file."""
        return DslSyntaxError(self.message, self.offset, self.expected, line, column)


class UnboundParameter(DslError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unbound parameter '{self.name}'"


class MissingSection(DslError):
    def __init__(self, section):
        super().__init__(f"missing section [{section}]")
        self.section = section


class MissingKey(DslError):
    def __init__(self, section, key):
        super().__init__(f"missing key '{key}' in section [{section}]")
        self.section = section
        self.key = key


class DomainError(DslError, ArithmeticError):
    """Expression evaluated outside its real domain (sqrt(-1), 1/0, ...)."""


# --- dynamics ---

class DegenerateDenominator(PsvfError, ArithmeticError):
    """Y3 - X3 vanishes where the sliding field is requested."""


class ComplexEigenvalues(PsvfError, ArithmeticError):
    def __init__(self, delta):
        super().__init__(f"discriminant {delta!r} is negative")
        self.delta = delta


class ComplexBranch(PsvfError, ArithmeticError):
    def __init__(self, radicand):
        super().__init__(f"square-root radicand {radicand!r} is negative")
        self.radicand = radicand


class LambdaZero(PsvfError, ArithmeticError):
    """The return-map linearization at the origin needs lambda != 0."""


class DegenerateContact(PsvfError, ArithmeticError):
    """The flight polynomial vanishes identically: the orbit stays on z = 0."""


class NoReturn(PsvfError, LookupError):
    """The orbit does not come back to the switching plane."""


class StepUnderflow(PsvfError, RuntimeError):
    def __init__(self, message, time, point):
        super().__init__(f"{message} (t = {time!r}, last point {point})")
        self.time = time
        self.point = point


# --- stability lab ---

class CertificateFailed(PsvfError):
    def __init__(self, inequality):
        super().__init__(f"escape certificate failed: {inequality}")
        self.inequality = inequality
