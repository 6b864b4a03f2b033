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
Reader for ``.psvf`` system files.

    # comment
    [meta]
    description = "cusp-fold normal form"

    [field.X]
    dx = "a"
    dy = "lambda"
    dz = "b*(y + x^2)"

    [field.Y]
    dx = "c"
    dy = "d"
    dz = "x"

    [params]
    a = -1
    lambda = 0
"""

import logging
import re
from dataclasses import dataclass, field
from types import MappingProxyType

from src.dsl.expression import free_params
from src.dsl.parser import parse_expression
from src.errors import DslError, DslSyntaxError, MissingKey, MissingSection, UnboundParameter

logger = logging.getLogger(__name__)

FIELD_SECTIONS = ("field.X", "field.Y")
FIELD_KEYS = ("dx", "dy", "dz")
KNOWN_SECTIONS = FIELD_SECTIONS + ("params", "meta")

_SECTION = re.compile(r"^\[\s*([A-Za-z0-9_.]+)\s*\]$")
_ENTRY = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_NUMBER = re.compile(r"^[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?$")


@dataclass(frozen=True)
class SystemSpec:
    """Parsed system file: two fields of three expressions each, plus parameters."""

    field_x: tuple
    field_y: tuple
    params: MappingProxyType
    meta: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))
    source: str = None

    def expressions(self):
        return self.field_x + self.field_y

    def with_params(self, overrides):
        merged = dict(self.params)
        merged.update({k: float(v) for k, v in overrides.items()})
        return SystemSpec(self.field_x, self.field_y, MappingProxyType(merged), self.meta, self.source)


def _strip_comment(line):
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def _unquote(raw, lineno, column):
    """Return (text, column of the first character of text)."""
    if raw.startswith('"'):
        if len(raw) < 2 or not raw.endswith('"'):
            raise DslSyntaxError("unterminated string", 0, '"').located(lineno, column)
        return raw[1:-1], column + 1
    return raw, column


def parse_system(text, source=None):
    """Parse the contents of a system file into a SystemSpec."""
    sections = {}
    current = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw_line).rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        header = _SECTION.match(stripped)
        if header:
            current = header.group(1)
            if current not in KNOWN_SECTIONS:
                raise DslSyntaxError(f"unknown section [{current}]", 0, "one of " + ", ".join(KNOWN_SECTIONS),
                                     lineno, indent + 1)
            if current in sections:
                raise DslSyntaxError(f"duplicate section [{current}]", 0, None, lineno, indent + 1)
            sections[current] = {}
            continue
        entry = _ENTRY.match(stripped)
        if not entry:
            raise DslSyntaxError("malformed line", 0, "'[section]' or 'key = value'", lineno, indent + 1)
        if current is None:
            raise DslSyntaxError("entry outside of a section", 0, "'[section]'", lineno, indent + 1)
        key, raw_value = entry.group(1), entry.group(2).strip()
        if key in sections[current]:
            raise DslSyntaxError(f"duplicate key '{key}'", 0, None, lineno, indent + 1)
        value_column = indent + entry.start(2) + 1
        sections[current][key] = (raw_value, lineno, value_column)

    fields = {}
    for name in FIELD_SECTIONS:
        if name not in sections:
            raise MissingSection(name)
        entries = sections[name]
        unknown = set(entries) - set(FIELD_KEYS)
        if unknown:
            _, lineno, column = entries[sorted(unknown)[0]]
            raise DslSyntaxError(f"unknown key '{sorted(unknown)[0]}'", 0, "dx, dy or dz", lineno, column)
        components = []
        for key in FIELD_KEYS:
            if key not in entries:
                raise MissingKey(name, key)
            raw_value, lineno, column = entries[key]
            body, body_column = _unquote(raw_value, lineno, column)
            try:
                components.append(parse_expression(body))
            except DslSyntaxError as err:
                raise err.located(lineno, body_column + err.offset) from None
        fields[name] = tuple(components)

    params = {}
    for key, (raw_value, lineno, column) in sections.get("params", {}).items():
        if not _NUMBER.match(raw_value):
            raise DslSyntaxError(f"parameter '{key}' is not a decimal number", 0, "number", lineno, column)
        params[key] = float(raw_value)

    meta = {}
    for key, (raw_value, lineno, column) in sections.get("meta", {}).items():
        meta[key], _ = _unquote(raw_value, lineno, column)

    spec = SystemSpec(
        field_x=fields["field.X"],
        field_y=fields["field.Y"],
        params=MappingProxyType(params),
        meta=MappingProxyType(meta),
        source=source,
    )
    for expr in spec.expressions():
        missing = sorted(free_params(expr) - set(params))
        if missing:
            raise UnboundParameter(missing[0])
    logger.debug("parsed system %s with parameters %s", source or "<text>", sorted(params))
    return spec


def load_system(path):
    """Read and parse a system file from disk."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        raise DslError(f"cannot read system file {path}: {err.strerror}") from err
    return parse_system(text, source=str(path))
