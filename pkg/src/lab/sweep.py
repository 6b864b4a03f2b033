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
Parameter sweeps: one stability verdict and eigen summary per grid cell.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import partial
from multiprocessing import Pool

from src.dynamics.return_map import return_map_eigen_origin
from src.dynamics.sliding import sliding_eigen_origin
from src.errors import ConfigError, PsvfError
from src.lab.stability import classify_stability
from src.models.params import CANONICAL, PARAM_NAMES, ParamSet, param_key

logger = logging.getLogger(__name__)

FIELDNAMES = [
    "key", *PARAM_NAMES, "verdict", "error",
    "sliding_eig1", "sliding_eig2", "sliding_status",
    "xi_plus", "xi_minus", "return_status",
    "samples", "converged_fraction",
]

_FLOAT_FIELDS = ("sliding_eig1", "sliding_eig2", "xi_plus", "xi_minus", "converged_fraction")


def _text(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _number(text):
    return float(text) if text not in ("", None) else None


@dataclass(frozen=True)
class SweepRow:
    key: str
    values: dict
    verdict: str = ""
    error: str = ""
    sliding_eig1: float = None
    sliding_eig2: float = None
    sliding_status: str = ""
    xi_plus: float = None
    xi_minus: float = None
    return_status: str = ""
    samples: int = 0
    converged_fraction: float = None

    @property
    def sort_key(self):
        return tuple(float(self.values[name]) for name in PARAM_NAMES)

    def as_csv_row(self):
        row = {"key": self.key}
        row.update({name: _text(float(self.values[name])) for name in PARAM_NAMES})
        row.update({
            "verdict": self.verdict,
            "error": self.error,
            "sliding_status": self.sliding_status,
            "return_status": self.return_status,
            "samples": str(self.samples),
        })
        row.update({name: _text(getattr(self, name)) for name in _FLOAT_FIELDS})
        return row

    @classmethod
    def from_csv_row(cls, row):
        return cls(
            key=row["key"],
            values={name: float(row[name]) for name in PARAM_NAMES},
            verdict=row.get("verdict", ""),
            error=row.get("error", ""),
            sliding_status=row.get("sliding_status", ""),
            return_status=row.get("return_status", ""),
            samples=int(row.get("samples") or 0),
            **{name: _number(row.get(name)) for name in _FLOAT_FIELDS},
        )


def parse_range(text):
    """Values of ``lo:hi:step`` (inclusive of hi up to rounding) or of a single number."""
    parts = [part.strip() for part in text.split(":")]
    try:
        numbers = [float(part) for part in parts]
    except ValueError as err:
        raise ConfigError(f"malformed range '{text}'") from err
    if len(numbers) == 1:
        return numbers
    if len(numbers) != 3:
        raise ConfigError(f"range must look like lo:hi:step, got '{text}'")
    lo, hi, step = numbers
    if not all(math.isfinite(v) for v in numbers) or step <= 0.0:
        raise ConfigError(f"range '{text}' needs finite bounds and a positive step")
    if hi < lo:
        return []
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def parameter_grid(ranges, base=None):
    """Cartesian grid of parameter mappings; names without a range keep ``base`` values."""
    base = (base or CANONICAL).as_dict()
    axes = []
    for name in PARAM_NAMES:
        values = ranges.get(name)
        axes.append(list(values) if values is not None else [base[name]])
    return [dict(zip(PARAM_NAMES, combo)) for combo in itertools.product(*axes)]


def evaluate_cell(values, spec=None, config=None):
    """Sweep row of one grid cell; every library error ends up in the row."""
    key = param_key(values)
    try:
        params = ParamSet.from_mapping(values)
    except PsvfError as err:
        return SweepRow(key, dict(values), error=f"{type(err).__name__}: {err}")

    eigen = {}
    try:
        sliding = sliding_eigen_origin(params)
        eigen.update(sliding_eig1=sliding.eig1, sliding_eig2=sliding.eig2, sliding_status="ok")
    except PsvfError as err:
        eigen["sliding_status"] = type(err).__name__
    try:
        ret = return_map_eigen_origin(params)
        eigen.update(xi_plus=ret.xi_plus, xi_minus=ret.xi_minus, return_status="ok")
    except PsvfError as err:
        eigen["return_status"] = type(err).__name__

    try:
        verdict = classify_stability(params, spec, config)
    except PsvfError as err:
        logger.info("cell %s: %s", key, err)
        return SweepRow(key, dict(values), error=f"{type(err).__name__}: {err}", **eigen)
    return SweepRow(
        key,
        dict(values),
        verdict=verdict.verdict.value,
        samples=len(verdict.samples),
        converged_fraction=verdict.converged_fraction,
        **eigen,
    )


def run_sweep(cells, spec=None, config=None, workers=1, on_row=None):
    """Evaluate every cell and return the rows sorted by parameter values.

    ``on_row`` is called with each row as soon as it is available; with
    several workers the calls come in completion order.
    """
    task = partial(evaluate_cell, spec=spec, config=config)
    rows = []

    def collect(row):
        rows.append(row)
        if on_row is not None:
            on_row(row)

    if workers > 1 and len(cells) > 1:
        with Pool(processes=workers) as pool:
            for row in pool.imap_unordered(task, cells):
                collect(row)
    else:
        for cell in cells:
            collect(task(cell))
    logger.info("sweep finished: %d cells", len(rows))
    return sorted(rows, key=lambda row: row.sort_key)


class SweepProgress:
    """Counts stored cells; connect ``row_saved`` to the store's signal of the same name."""

    def __init__(self, total):
        self.total = total
        self.stored = 0

    def row_saved(self, key):
        self.stored += 1
        logger.info("stored cell %s (%d/%d)", key, self.stored, self.total)
