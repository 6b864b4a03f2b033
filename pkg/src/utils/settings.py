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
INI overrides for SimConfig and SampleSpec.

    [simulation]
    t_max = 50
    escape_policy = X

    [sampling]
    count = 100
    seed = 7
"""

import dataclasses
import logging
import os

from PySide6.QtCore import QSettings

from src.dynamics.hybrid import SimConfig
from src.errors import ConfigError
from src.lab.sampling import SampleSpec

logger = logging.getLogger(__name__)


def _convert(name, kind, raw):
    if isinstance(raw, (list, tuple)):
        # QSettings splits unquoted values at commas.
        raw = ",".join(str(part) for part in raw)
    try:
        if kind is int:
            return int(str(raw))
        if kind is float:
            return float(str(raw))
    except ValueError as err:
        raise ConfigError(f"{name}: cannot read {raw!r} as {kind.__name__}") from err
    return str(raw)


def read_group(path, group, target):
    """Values of INI ``group`` converted to the field types of dataclass ``target``."""
    if not os.path.isfile(path):
        raise ConfigError(f"configuration file not found: {path}")
    settings = QSettings(path, QSettings.Format.IniFormat)
    if settings.status() != QSettings.Status.NoError:
        raise ConfigError(f"cannot read configuration file {path}")
    kinds = {f.name: f.type for f in dataclasses.fields(target)}
    values = {}
    settings.beginGroup(group)
    try:
        for key in settings.childKeys():
            if key not in kinds:
                raise ConfigError(f"unknown key '{key}' in [{group}] of {path}")
            values[key] = _convert(key, kinds[key], settings.value(key))
    finally:
        settings.endGroup()
    logger.debug("read %d keys from [%s] of %s", len(values), group, path)
    return values


def load_sim_config(path, base=None):
    return (base or SimConfig()).with_overrides(**read_group(path, "simulation", SimConfig))


def load_sample_spec(path, base=None):
    return (base or SampleSpec()).with_overrides(**read_group(path, "sampling", SampleSpec))
