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

import csv
import json
import logging
import os

import numpy as np

logger = logging.getLogger(__name__)

TRAJECTORY_FIELDS = ["t", "x", "y", "z", "mode", "event"]


def _cell(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return value


def export_rows_to_csv(rows, filepath, fieldnames):
    """
    Write dictionaries to a CSV file

    Args:
        rows: Iterable of dicts keyed by ``fieldnames``
        filepath: Path to save the CSV file
        fieldnames: Column order

    Returns:
        bool: True if successful, False otherwise
    """
    try:
        with open(filepath, 'w', newline='', encoding='utf-8') as csvfile:
            writer = csv.DictWriter(csvfile, fieldnames=fieldnames)
            writer.writeheader()
            for row in rows:
                writer.writerow({key: _cell(value) for key, value in row.items()})
        return True
    except OSError:
        logger.exception("error exporting CSV to %s", filepath)
        return False


def append_row_to_csv(row, filepath, fieldnames):
    """Append one row, writing the header first when the file is new or empty."""
    try:
        fresh = not os.path.exists(filepath) or os.path.getsize(filepath) == 0
        with open(filepath, 'a', newline='', encoding='utf-8') as csvfile:
            writer = csv.DictWriter(csvfile, fieldnames=fieldnames)
            if fresh:
                writer.writeheader()
            writer.writerow({key: _cell(value) for key, value in row.items()})
        return True
    except OSError:
        logger.exception("error appending to %s", filepath)
        return False


def export_trajectory_to_csv(trajectory, filepath):
    """
    Export a simulated trajectory as t,x,y,z,mode,event rows

    Args:
        trajectory: HybridTrajectory to export
        filepath: Path to save the CSV file

    Returns:
        bool: True if successful, False otherwise
    """
    rows = (dict(zip(TRAJECTORY_FIELDS, row)) for row in trajectory.rows())
    return export_rows_to_csv(rows, filepath, TRAJECTORY_FIELDS)


def write_json_report(data, filepath):
    """
    Write a report as sorted, indented JSON

    Returns:
        bool: True if successful, False otherwise
    """
    try:
        with open(filepath, 'w', encoding='utf-8') as handle:
            json.dump(data, handle, sort_keys=True, indent=2, default=_json_default)
            handle.write("\n")
        return True
    except (OSError, TypeError, ValueError):
        logger.exception("error writing report to %s", filepath)
        return False


def _json_default(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def read_sweep_csv(filepath):
    """Rows of an existing sweep CSV, or an empty list when the file is missing."""
    if not os.path.exists(filepath):
        return []
    try:
        with open(filepath, newline='', encoding='utf-8') as csvfile:
            return list(csv.DictReader(csvfile))
    except (OSError, csv.Error):
        logger.exception("error reading sweep CSV %s", filepath)
        return []
