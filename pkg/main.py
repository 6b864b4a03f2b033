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
Cusp-Fold Lab
Numerical study of a Filippov system with a cusp-fold singularity at the origin.
"""

import sys

from src.cli.commands import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
