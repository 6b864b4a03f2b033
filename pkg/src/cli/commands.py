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
Command-line frontend.

    python main.py classify --point 1,0,0
    python main.py simulate --point 1,-1,0.01 --ball-radius 100 --out run.csv
    python main.py return-map --point 1,-1 --iterate 10
    python main.py verify --suite theorem-a --lambda -0.05 --out report.json
    python main.py sweep --lambda-range -0.1:0.1:0.02 --out sweep.csv

Exit codes: 0 success, 1 computation failure or failed check, 2 bad input.
"""

import argparse
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from src.db.database import SweepStore
from src.dsl.system import ExpressionSystem
from src.dsl.system_file import load_system
from src.dynamics.hybrid import EscapePolicy, SimConfig, simulate
from src.dynamics.return_map import (
    Branch, first_return_map, iterate_return_map, return_map_eigen_origin,
)
from src.errors import (
    ComplexBranch, ConfigError, DomainError, DslError, NonFiniteValue, OffSwitchingPlane,
    PreconditionError, PsvfError, RegimeViolation,
)
from src.lab.sampling import SampleSpec
from src.lab.suites import SUITE_NAMES, run_suites
from src.lab.sweep import FIELDNAMES, SweepProgress, SweepRow, parameter_grid, parse_range, run_sweep
from src.models.geometry import Point3
from src.models.params import CANONICAL, ParamSet, param_key
from src.models.regions import RegionLabel, classify_region, classify_tangency
from src.models.system import NormalFormSystem
from src.utils.export import (
    append_row_to_csv, export_rows_to_csv, export_trajectory_to_csv, read_sweep_csv, write_json_report,
)
from src.utils.settings import load_sample_spec, load_sim_config
from src.utils.setup import setup_application

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

USAGE_ERRORS = (DslError, ConfigError, PreconditionError, RegimeViolation, OffSwitchingPlane, NonFiniteValue)


@dataclass
class RunManifest:
    """Everything one invocation depends on."""

    command: str
    system_path: str = None
    params: ParamSet = None
    overrides: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    seed: int = None

    def __post_init__(self):
        if (self.system_path is None) == (self.params is None):
            raise ConfigError("exactly one of --system and --builtin must be set")

    def system(self):
        if self.params is not None:
            return NormalFormSystem(self.params)
        spec = load_system(self.system_path)
        overrides = {"lambda": self.overrides["lambda"]} if "lambda" in self.overrides else None
        return ExpressionSystem(spec, overrides)

    def describe(self):
        if self.params is not None:
            return {"builtin": self.params.as_dict()}
        return {"system": self.system_path, "overrides": dict(self.overrides)}


def parse_point(text, dims=(2, 3)):
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as err:
        raise ConfigError(f"malformed point '{text}'") from err
    if len(values) not in dims or not all(math.isfinite(v) for v in values):
        raise ConfigError(f"point '{text}' needs {' or '.join(map(str, dims))} finite coordinates")
    if len(values) == 2:
        values.append(0.0)
    return Point3(*values)


def build_manifest(args):
    lam = getattr(args, "lam", None)
    system_path = getattr(args, "system", None)
    params = None
    if system_path is None:
        try:
            params = ParamSet.parse(args.builtin) if getattr(args, "builtin", None) else CANONICAL
        except PsvfError:
            raise
        except (KeyError, ValueError) as err:
            raise ConfigError(f"malformed --builtin value: {err}") from err
        if lam is not None:
            params = params.with_lambda(lam)
    return RunManifest(
        command=args.command,
        system_path=system_path,
        params=params,
        overrides={"lambda": lam} if lam is not None else {},
        outputs={"out": getattr(args, "out", None)},
        seed=getattr(args, "seed", None),
    )


def require_builtin(manifest):
    if manifest.params is None:
        raise ConfigError(f"{manifest.command} works on the built-in normal form only (use --builtin)")
    return manifest.params


def load_config(args):
    config = SimConfig()
    if getattr(args, "config", None):
        config = load_sim_config(args.config, config)
    return config


def _branch_path(out, index, count):
    if count == 1:
        return out
    path = Path(out)
    return str(path.with_name(f"{path.stem}.{index}{path.suffix}"))


# --- classify ---

def _classify_point(system, p, tol):
    label = classify_region(system, p, tol)
    row = {"x": p.x, "y": p.y, "region": label.value, "tangency": "", "x_contact": "", "y_contact": ""}
    text = label.value
    if label is RegionLabel.TANGENTIAL:
        tangency = classify_tangency(system, p, tol)
        row.update(tangency=tangency.combined.value, x_contact=tangency.x.value, y_contact=tangency.y.value)
        text = f"Tangential: {tangency.combined.value}"
    return row, text


def cmd_classify(args):
    manifest = build_manifest(args)
    system = manifest.system()
    if args.point:
        points = [parse_point(args.point)]
    elif args.grid_x and args.grid_y:
        points = [Point3.planar(x, y) for x in parse_range(args.grid_x) for y in parse_range(args.grid_y)]
    else:
        raise ConfigError("classify needs --point or both --grid-x and --grid-y")

    rows = []
    for p in points:
        row, text = _classify_point(system, p, args.tol)
        rows.append(row)
        print(text if len(points) == 1 else f"({p.x!r}, {p.y!r}): {text}")
    if args.out and not export_rows_to_csv(rows, args.out, list(rows[0]) if rows else ["x", "y"]):
        return EXIT_FAILURE
    return EXIT_OK


# --- simulate ---

def cmd_simulate(args):
    manifest = build_manifest(args)
    system = manifest.system()
    p0 = parse_point(args.point, dims=(3,))
    config = load_config(args).with_overrides(
        t_max=args.t_max,
        ball_radius=args.ball_radius,
        escape_policy=EscapePolicy.parse(args.escape_policy) if args.escape_policy else None,
    )
    branches = simulate(system, p0, config)

    for traj in branches:
        kinds = ", ".join(e.kind.value for e in traj.events) or "none"
        label = f"branch {traj.branch}: " if traj.branch else ""
        print(f"{label}{traj.terminal_status.value} at t={traj.end_time!r}, end {traj.end_point}")
        print(f"  events: {kinds}")
        for note in traj.approximations:
            print(f"  note: {note}")

    ok = True
    if args.out:
        for index, traj in enumerate(branches):
            ok = export_trajectory_to_csv(traj, _branch_path(args.out, index, len(branches))) and ok
    if args.summary:
        report = {
            "model": manifest.describe(),
            "start": list(p0.as_array()),
            "config": config.as_dict(),
            "config_digest": config.digest(),
            "branches": [traj.summary() for traj in branches],
        }
        ok = write_json_report(report, args.summary) and ok
    return EXIT_OK if ok else EXIT_FAILURE


# --- return-map ---

def cmd_return_map(args):
    manifest = build_manifest(args)
    params = require_builtin(manifest)
    branch = Branch(args.branch)
    q = parse_point(args.point, dims=(2,))
    rows = []

    try:
        result = first_return_map(params, q, branch)
        image = result.point
        fixed = image.x == q.x and image.y == q.y
        status = "FixedPoint" if fixed else "ok"
        print(f"phi({q.x!r}, {q.y!r}) = ({image.x!r}, {image.y!r})" + ("  [fixed point]" if fixed else ""))
        rows.append({"row": "image", "n": 1, "x": image.x, "y": image.y, "status": status,
                     "detail": f"realizable={result.realizable}"})
    except ComplexBranch as err:
        print(f"phi({q.x!r}, {q.y!r}): complex branch (radicand {err.radicand!r})")
        rows.append({"row": "image", "n": 1, "x": "", "y": "", "status": "ComplexBranch",
                     "detail": f"radicand={err.radicand!r}"})

    if args.iterate:
        orbit = iterate_return_map(params, q, max_iter=args.iterate, branch=branch)
        for n, p in enumerate(orbit.points):
            rows.append({"row": "orbit", "n": n, "x": p.x, "y": p.y, "status": "", "detail": ""})
            print(f"  {n:4d}  ({p.x!r}, {p.y!r})")
        rows[-1]["status"] = orbit.status.value
        print(f"orbit: {orbit.iterations} iterations, {orbit.status.value}")

    if args.eigen:
        eigen = return_map_eigen_origin(params)
        product = eigen.xi_plus * eigen.xi_minus
        print(f"xi+ = {eigen.xi_plus!r}, xi- = {eigen.xi_minus!r}, xi+ * xi- = {product!r}")
        print(f"x = {eigen.omega_plus!r} y: {eigen.regions_plus[0].value} / {eigen.regions_plus[1].value}")
        print(f"x = {eigen.omega_minus!r} y: {eigen.regions_minus[0].value} / {eigen.regions_minus[1].value}")
        rows.append({"row": "eigen", "n": "", "x": eigen.xi_plus, "y": eigen.xi_minus, "status": "ok",
                     "detail": f"product={product!r}"})
        rows.append({"row": "line", "n": "+", "x": eigen.omega_plus, "y": 1.0, "status": "ok",
                     "detail": "/".join(label.value for label in eigen.regions_plus)})
        rows.append({"row": "line", "n": "-", "x": eigen.omega_minus, "y": 1.0, "status": "ok",
                     "detail": "/".join(label.value for label in eigen.regions_minus)})

    if args.out and not export_rows_to_csv(rows, args.out, ["row", "n", "x", "y", "status", "detail"]):
        return EXIT_FAILURE
    return EXIT_OK


# --- verify ---

def _sample_spec(args):
    spec = SampleSpec()
    if getattr(args, "config", None):
        spec = load_sample_spec(args.config, spec)
    return spec.with_overrides(seed=args.seed, count=getattr(args, "samples", None))


def cmd_verify(args):
    manifest = build_manifest(args)
    params = require_builtin(manifest)
    config = load_config(args)
    spec = _sample_spec(args)
    reports, skipped = run_suites([args.suite], params, spec, config, samples=args.samples, seed=args.seed)

    for report in reports:
        print(f"{report.name}: {'PASS' if report.passed else 'FAIL'}")
        if report.failures:
            print(f"  first failing record: {report.failures[0]}")
    for name in skipped:
        print(f"{name}: skipped (does not apply to lambda={params.lam!r})")

    passed = all(report.passed for report in reports)
    if args.out:
        document = {
            "params": params.as_dict(),
            "passed": passed,
            "suites": [report.to_report() for report in reports],
            "skipped": skipped,
            "seeds": [spec.seed],
            "sample_spec": spec.as_dict(),
            "config": config.as_dict(),
            "config_digest": config.digest(),
        }
        if not write_json_report(document, args.out):
            return EXIT_FAILURE
    return EXIT_OK if passed else EXIT_FAILURE


# --- sweep ---

def _grid_ranges(args):
    ranges = {}
    for name, text in (("a", args.a_range), ("b", args.b_range), ("c", args.c_range),
                       ("d", args.d_range), ("lambda", args.lambda_range)):
        if text is not None:
            ranges[name] = parse_range(text)
    return ranges


def cmd_sweep(args):
    manifest = build_manifest(args)
    base = require_builtin(manifest)
    config = load_config(args)
    spec = _sample_spec(args)
    cells = parameter_grid(_grid_ranges(args), base=base)
    grid_keys = {param_key(cell) for cell in cells}

    store = SweepStore(args.db or f"{args.out}.db")
    if args.resume:
        for record in read_sweep_csv(args.out):
            if record.get("key") in grid_keys:
                store.save_row(SweepRow.from_csv_row(record))
    else:
        store.clear()
        if os.path.exists(args.out):
            os.remove(args.out)
    done = store.completed_keys()
    pending = [cell for cell in cells if param_key(cell) not in done]
    print(f"{len(cells)} cells, {len(cells) - len(pending)} already done; config digest {config.digest()}")

    progress = SweepProgress(len(pending))
    store.row_saved.connect(progress.row_saved)

    def on_row(row):
        store.save_row(row)
        append_row_to_csv(row.as_csv_row(), args.out, FIELDNAMES)
        print(f"{row.key}: {row.verdict or row.error}")

    run_sweep(pending, spec, config, workers=args.workers, on_row=on_row)
    rows = [row for row in store.get_rows() if row.key in grid_keys]
    if not export_rows_to_csv((row.as_csv_row() for row in rows), args.out, FIELDNAMES):
        return EXIT_FAILURE
    return EXIT_OK


# --- parser ---

def _model_options(parser, builtin_only=False):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--builtin", metavar="PARAMS",
                       help="normal-form parameters, e.g. a=-1,b=-1,c=1,d=-2,lambda=0 (default: canonical)")
    if not builtin_only:
        group.add_argument("--system", metavar="FILE", help="system file (.psvf)")
    parser.add_argument("--lambda", dest="lam", type=float, help="override lambda")


def build_parser():
    parser = argparse.ArgumentParser(prog="cuspfold", description="Cusp-fold Filippov system lab")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--log-file", help="also write log records to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="region and tangency class of switching-plane points")
    _model_options(p)
    p.add_argument("--point", help="x,y or x,y,z (z must be 0)")
    p.add_argument("--grid-x", help="lo:hi:step")
    p.add_argument("--grid-y", help="lo:hi:step")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", help="CSV file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="Filippov trajectory from a point")
    _model_options(p)
    p.add_argument("--point", required=True, help="x,y,z")
    p.add_argument("--t-max", type=float)
    p.add_argument("--ball-radius", type=float)
    p.add_argument("--escape-policy", choices=["both", "x", "y"])
    p.add_argument("--config", help="INI file with a [simulation] group")
    p.add_argument("--out", help="trajectory CSV (one file per branch)")
    p.add_argument("--summary", help="JSON summary")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("return-map", help="first-return map, its orbit and eigen-data at the origin")
    _model_options(p, builtin_only=True)
    p.add_argument("--point", default="0,0", help="x,y")
    p.add_argument("--branch", choices=[b.value for b in Branch], default=Branch.PRINCIPAL.value)
    p.add_argument("--iterate", type=int, default=0, metavar="N")
    p.add_argument("--eigen", action="store_true")
    p.add_argument("--out", help="CSV file")
    p.set_defaults(func=cmd_return_map)

    p = sub.add_parser("verify", help="run a verification suite")
    _model_options(p, builtin_only=True)
    p.add_argument("--suite", choices=[*SUITE_NAMES, "all"], default="all")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="INI file with [simulation] and [sampling] groups")
    p.add_argument("--out", help="JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="stability verdicts over a parameter grid")
    _model_options(p, builtin_only=True)
    for name in ("a", "b", "c", "d", "lambda"):
        p.add_argument(f"--{name}-range", dest=f"{name}_range", metavar="LO:HI:STEP")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="INI file with [simulation] and [sampling] groups")
    p.add_argument("--out", required=True, help="sweep CSV")
    p.add_argument("--db", help="sqlite store (default: <out>.db)")
    p.add_argument("--resume", action="store_true", help="skip cells already in the output file")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    setup_application(args.verbose, args.log_file)
    try:
        return args.func(args)
    except DomainError as err:
        logger.error("%s", err)
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAILURE
    except USAGE_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except PsvfError as err:
        logger.error("%s failed: %s", args.command, err)
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAILURE
