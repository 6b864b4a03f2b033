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
import sqlite3

from PySide6.QtCore import QObject, Signal

from src.lab.sweep import FIELDNAMES, SweepRow

logger = logging.getLogger(__name__)

_COLUMNS = [name if name != "lambda" else "lam" for name in FIELDNAMES]


class SweepStore(QObject):
    """sqlite store of sweep rows keyed by grid key."""

    row_saved = Signal(str)

    def __init__(self, db_path="sweep.db"):
        super().__init__()
        self.db_path = db_path
        self.initialize_database()

    def get_connection(self):
        """Create and return a database connection"""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        return conn

    def initialize_database(self):
        """Create the sweep_rows table if it does not exist"""
        conn = self.get_connection()
        cursor = conn.cursor()
        cursor.execute('''
        CREATE TABLE IF NOT EXISTS sweep_rows (
            key TEXT PRIMARY KEY,
            a REAL NOT NULL,
            b REAL NOT NULL,
            c REAL NOT NULL,
            d REAL NOT NULL,
            lam REAL NOT NULL,
            verdict TEXT,
            error TEXT,
            sliding_eig1 TEXT,
            sliding_eig2 TEXT,
            sliding_status TEXT,
            xi_plus TEXT,
            xi_minus TEXT,
            return_status TEXT,
            samples INTEGER DEFAULT 0,
            converged_fraction TEXT
        )
        ''')
        conn.commit()
        conn.close()

    def save_row(self, row):
        """
        Insert or replace one sweep row

        Args:
            row (SweepRow): Row to store

        Returns:
            bool: True if the row was stored
        """
        values = row.as_csv_row()
        try:
            conn = self.get_connection()
            conn.execute(
                f"INSERT OR REPLACE INTO sweep_rows ({', '.join(_COLUMNS)}) "
                f"VALUES ({', '.join('?' for _ in _COLUMNS)})",
                [values[name] for name in FIELDNAMES],
            )
            conn.commit()
            conn.close()
        except sqlite3.Error:
            logger.exception("could not store sweep row %s", row.key)
            return False
        self.row_saved.emit(row.key)
        return True

    def completed_keys(self):
        """
        Keys of every stored row

        Returns:
            set: Grid keys already evaluated
        """
        try:
            conn = self.get_connection()
            keys = {record["key"] for record in conn.execute("SELECT key FROM sweep_rows")}
            conn.close()
        except sqlite3.Error:
            logger.exception("could not read sweep keys")
            return set()
        return keys

    def get_rows(self):
        """
        All stored rows sorted by parameter values

        Returns:
            list: SweepRow objects
        """
        try:
            conn = self.get_connection()
            records = conn.execute(f"SELECT {', '.join(_COLUMNS)} FROM sweep_rows").fetchall()
            conn.close()
        except sqlite3.Error:
            logger.exception("could not read sweep rows")
            return []
        rows = []
        for record in records:
            data = {name: record[column] for name, column in zip(FIELDNAMES, _COLUMNS)}
            rows.append(SweepRow.from_csv_row({k: "" if v is None else str(v) for k, v in data.items()}))
        return sorted(rows, key=lambda row: row.sort_key)

    def clear(self):
        """Delete every stored row"""
        conn = self.get_connection()
        conn.execute("DELETE FROM sweep_rows")
        conn.commit()
        conn.close()
