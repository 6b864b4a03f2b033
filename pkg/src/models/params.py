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

import math
import re
from dataclasses import dataclass, replace

from src.errors import DegenerateParameters, NonFiniteValue

PARAM_NAMES = ("a", "b", "c", "d", "lambda")

_ASSIGNMENT = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*([^,]+?)\s*$")


@dataclass(frozen=True)
class ParamSet:
    """Coefficients of the cusp-fold normal form.

    X = (a, lambda, b*(y + x^2)) above the plane, Y = (c, d, x) below it.
    ``lam`` stores lambda; ``as_dict`` and ``from_mapping`` use the name
    ``lambda``.
    """

    a: float
    b: float
    c: float
    d: float
    lam: float = 0.0

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "lam"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise NonFiniteValue(f"parameter {name} is not finite")
            object.__setattr__(self, name, value)
        if self.b == 0.0 or self.c == 0.0:
            raise DegenerateParameters(f"normal form needs b*c != 0, got b={self.b!r}, c={self.c!r}")

    @classmethod
    def from_mapping(cls, values, base=None):
        """Build from a mapping keyed by a, b, c, d, lambda.

        Missing keys are taken from ``base`` (canonical parameters by default).
        """
        base = base or CANONICAL
        merged = base.as_dict()
        for key, value in values.items():
            name = "lambda" if key in ("lam", "λ") else key
            if name not in PARAM_NAMES:
                raise KeyError(f"unknown parameter '{key}'")
            merged[name] = float(value)
        return cls(merged["a"], merged["b"], merged["c"], merged["d"], merged["lambda"])

    @classmethod
    def parse(cls, text, base=None):
        """Parse ``"a=-1,b=-1,lambda=0.05"``; unspecified names come from ``base``."""
        values = {}
        for chunk in filter(None, (part.strip() for part in text.split(","))):
            match = _ASSIGNMENT.match(chunk)
            if not match:
                raise ValueError(f"malformed parameter assignment '{chunk}'")
            values[match.group(1)] = float(match.group(2))
        return cls.from_mapping(values, base=base)

    def with_lambda(self, lam):
        return replace(self, lam=float(lam))

    def as_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "lambda": self.lam}

    def hypotheses(self):
        """Truth values of the stability-theorem hypotheses H1..H4."""
        return {
            "H1": self.c > 0.0,
            "H2": self.a < 0.0 and self.b * self.d > 0.0,
            "H3": self.b < 0.0,
            "H4": self.a + self.b * self.d > 0.0,
        }

    @property
    def satisfies_hypotheses(self):
        # H2 and H3 together force d < 0.
        return all(self.hypotheses().values()) and self.d < 0.0

    def failed_hypotheses(self):
        return [name for name, ok in self.hypotheses().items() if not ok]

    def key(self):
        """Stable textual key used for sweep rows."""
        return param_key(self.as_dict())

    def __str__(self):
        return ", ".join(f"{name}={value!r}" for name, value in self.as_dict().items())


CANONICAL = ParamSet(a=-1.0, b=-1.0, c=1.0, d=-2.0, lam=0.0)


def param_key(values):
    """Key of a mapping of parameter values, in a, b, c, d, lambda order.

    Also used for grid cells whose values do not form a valid ParamSet.
    """
    return "|".join(f"{name}={format(float(values[name]), '.12g')}" for name in PARAM_NAMES)
