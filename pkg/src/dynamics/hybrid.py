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
Event-driven simulation of Filippov trajectories.

A trajectory is a sequence of arcs of X (z >= 0), arcs of Y (z <= 0) and
sliding segments on z = 0. Each arc is integrated with an adaptive
explicit Runge-Kutta scheme until an event function vanishes; the mode
after an event is chosen from the region of the event point.
"""

import hashlib
import json
import logging
import math
from dataclasses import asdict, dataclass, field, replace
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp

from src.dynamics.sliding import normalized_components
from src.errors import ConfigError, PreconditionError, StepUnderflow
from src.models.geometry import Point3
from src.models.regions import RegionLabel, classify_region
from src.models.system import Field

logger = logging.getLogger(__name__)


class Mode(Enum):
    X = "X"
    Y = "Y"
    SLIDING = "S"


class EventKind(Enum):
    CROSS = "CrossSigma"
    ENTER_SLIDING = "EnterSliding"
    EXIT_SLIDING = "ExitSliding"
    TANGENCY_HIT = "TangencyHit"
    ESCAPE_SPLIT = "EscapeSplit"
    DOMAIN_EXIT = "DomainExit"
    ZENO_GUARD = "ZenoGuard"
    TARGET_REACHED = "TargetReached"


class TerminalStatus(Enum):
    T_MAX = "TMax"
    DOMAIN_EXIT = "DomainExit"
    ZENO_GUARD = "ZenoGuard"
    PSEUDO_EQUILIBRIUM = "PseudoEquilibrium"
    STUCK = "StuckAtSingularPoint"
    STEP_UNDERFLOW = "StepUnderflow"
    STOPPED = "Stopped"


class EscapePolicy(Enum):
    X = "X"
    Y = "Y"
    BOTH = "Both"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for member in cls:
            if member.value.lower() == str(value).strip().lower():
                return member
        raise ConfigError(f"unknown escape policy '{value}'")


@dataclass(frozen=True)
class SimConfig:
    """Integration and termination settings shared by every simulation."""

    t_max: float = 200.0
    ball_radius: float = 0.2
    event_tol: float = 1e-12
    max_events: int = 100_000
    escape_policy: EscapePolicy = EscapePolicy.BOTH
    method: str = "DOP853"
    rtol: float = 1e-10
    atol: float = 1e-12
    max_step: float = 0.25
    boundary_tol: float = 1e-9
    speed_tol: float = 1e-9
    tau_max: float = 1e4
    max_branches: int = 16

    def __post_init__(self):
        object.__setattr__(self, "escape_policy", EscapePolicy.parse(self.escape_policy))
        for name in ("t_max", "ball_radius", "event_tol", "rtol", "atol", "max_step",
                     "boundary_tol", "speed_tol", "tau_max"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if math.isnan(value) or value < 0.0:
                raise ConfigError(f"{name} must be non-negative, got {value!r}")
        for name in ("event_tol", "rtol", "atol", "max_step", "ball_radius", "tau_max"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"{name} must be positive")
        for name in ("max_events", "max_branches"):
            value = int(getattr(self, name))
            object.__setattr__(self, name, value)
            if value < 1:
                raise ConfigError(f"{name} must be at least 1")
        if self.method not in ("DOP853", "RK45", "RK23"):
            raise ConfigError(f"unsupported integration method '{self.method}'")

    def with_overrides(self, **changes):
        """Copy with the non-None entries of ``changes`` applied."""
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes) if changes else self

    def as_dict(self):
        data = asdict(self)
        data["escape_policy"] = self.escape_policy.value
        return data

    def digest(self):
        payload = json.dumps(self.as_dict(), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass
class Segment:
    mode: Mode
    times: np.ndarray
    points: np.ndarray

    @property
    def t_start(self):
        return float(self.times[0])

    @property
    def t_end(self):
        return float(self.times[-1])

    @property
    def start(self):
        return Point3.from_array(self.points[0])

    @property
    def end(self):
        return Point3.from_array(self.points[-1])

    @property
    def duration(self):
        return self.t_end - self.t_start


@dataclass(frozen=True)
class Event:
    time: float
    point: Point3
    kind: EventKind
    detail: str = ""
    # Number of segments completed when the event happened.
    segment: int = 0


@dataclass
class HybridTrajectory:
    start: Point3
    segments: list = field(default_factory=list)
    events: list = field(default_factory=list)
    terminal_status: TerminalStatus = None
    branch: str = ""
    approximations: list = field(default_factory=list)

    @property
    def end_point(self):
        if self.segments:
            return self.segments[-1].end
        return self.start

    @property
    def end_time(self):
        return self.segments[-1].t_end if self.segments else 0.0

    def kinds(self):
        return [event.kind for event in self.events]

    def has_event(self, kind):
        return any(event.kind is kind for event in self.events)

    def min_distance(self):
        if not self.segments:
            return self.start.norm()
        return float(min(np.linalg.norm(seg.points, axis=1).min() for seg in self.segments))

    def note(self, text):
        if text not in self.approximations:
            self.approximations.append(text)

    def copy(self, branch):
        return HybridTrajectory(
            start=self.start,
            segments=list(self.segments),
            events=list(self.events),
            terminal_status=self.terminal_status,
            branch=branch,
            approximations=list(self.approximations),
        )

    def rows(self):
        """Rows (t, x, y, z, mode, event) in time order for export."""
        rows = []

        def event_rows(index):
            if self.segments:
                seg = self.segments[min(index, len(self.segments) - 1)]
                mode = seg.mode.value
            else:
                mode = Mode.SLIDING.value
            for event in self.events:
                if event.segment == index:
                    p = event.point
                    rows.append((event.time, p.x, p.y, p.z, mode, event.kind.value))

        for index, seg in enumerate(self.segments):
            event_rows(index)
            for t, point in zip(seg.times, seg.points):
                rows.append((float(t), float(point[0]), float(point[1]), float(point[2]), seg.mode.value, ""))
        event_rows(len(self.segments))
        return rows

    def check_invariants(self, tol=1e-8):
        """Return a list of violated trajectory invariants (empty when sound)."""
        problems = []
        for i, seg in enumerate(self.segments):
            if np.any(np.diff(seg.times) < 0.0):
                problems.append(f"segment {i}: time decreases")
            z = seg.points[:, 2]
            if seg.mode is Mode.X and z.min() < -tol:
                problems.append(f"segment {i}: X arc below the plane (z = {z.min()!r})")
            if seg.mode is Mode.Y and z.max() > tol:
                problems.append(f"segment {i}: Y arc above the plane (z = {z.max()!r})")
            if seg.mode is Mode.SLIDING and np.abs(z).max() > tol:
                problems.append(f"segment {i}: sliding segment off the plane")
            if i > 0:
                prev = self.segments[i - 1]
                gap = float(np.linalg.norm(prev.points[-1] - seg.points[0]))
                if gap > tol * (1.0 + float(np.linalg.norm(seg.points[0]))):
                    problems.append(f"segment {i}: jump of {gap!r} from previous segment")
                if seg.t_start < prev.t_end - tol:
                    problems.append(f"segment {i}: starts before previous segment ends")
        times = [e.time for e in self.events]
        if any(b < a - tol for a, b in zip(times, times[1:])):
            problems.append("events out of order")
        return problems

    def summary(self):
        return {
            "branch": self.branch,
            "start": list(self.start.as_array()),
            "end": list(self.end_point.as_array()),
            "end_time": self.end_time,
            "terminal_status": self.terminal_status.value if self.terminal_status else None,
            "events": [
                {"time": e.time, "kind": e.kind.value, "point": list(e.point.as_array()), "detail": e.detail}
                for e in self.events
            ],
            "min_distance": self.min_distance(),
            "approximations": list(self.approximations),
        }


def _event(fn, direction):
    fn.terminal = True
    fn.direction = direction
    return fn


def _earliest_event(sol):
    best = None
    for index, times in enumerate(sol.t_events):
        if len(times) and (best is None or times[0] < best[1]):
            best = (index, float(times[0]), np.array(sol.y_events[index][0], dtype=float))
    return best


def contact_order(system, field, p, tol):
    """(k, L^k z) for the first Lie derivative of z at p that is not zero, or (None, 0.0)."""
    scale = 1.0 + max(abs(v) for v in system.components(field, p.x, p.y, 0.0))
    for k, value in enumerate(system.lie_derivatives(field, p, order=3), start=1):
        if abs(value) > tol * scale:
            return k, value
    return None, 0.0


def field_enters(system, field, p, tol):
    """True when the orbit of ``field`` through p moves into the field's own half-space.

    Decided by the sign of the first Lie derivative of z that is not zero.
    """
    inward = 1.0 if field is Field.X else -1.0
    order, value = contact_order(system, field, p, tol)
    return order is not None and inward * value > 0.0


def _plane_guard(t0, order, leading):
    """Guard z(t) / (t - t0)^order for an arc leaving the plane at t0.

    The root of z at t0 is divided out, so the guard only vanishes at the
    next return. At t0 it takes its limit L^order z / order!.
    """
    limit = leading / math.factorial(order)

    def guard(t, s):
        dt = t - t0
        if dt <= 0.0:
            return limit
        return s[2] / dt ** order

    return guard


def _single_point(mode, t0, p):
    return Segment(mode, np.array([t0]), np.array([p.as_array()]))


def _mode_at(p, tol):
    if p.z > tol:
        return Mode.X
    if p.z < -tol:
        return Mode.Y
    return Mode.SLIDING


def integrate_to_event(system, field, p0, config, t0=0.0, stop_radius=None):
    """Follow ``field`` from p0 until it meets the plane, leaves the ball or time runs out.

    Returns (Segment, Event or None). The event point on the plane is
    snapped to z = 0.
    """
    mode = Mode.X if field is Field.X else Mode.Y
    side = 1.0 if field is Field.X else -1.0
    if side * p0.z < -config.event_tol:
        raise PreconditionError(f"{p0} is not on the {field.value} side of the plane")
    guard = _event(lambda t, s: s[2], -side)
    if abs(p0.z) <= config.event_tol:
        p0 = p0.on_plane()
        order, leading = contact_order(system, field, p0, config.boundary_tol)
        if order is None or side * leading <= 0.0:
            raise PreconditionError(f"{field.value} does not leave the plane at {p0}")
        guard = _event(_plane_guard(t0, order, leading), -side)
    if config.t_max - t0 <= 0.0:
        return _single_point(mode, t0, p0), None

    def rhs(t, s):
        return system.components(field, s[0], s[1], s[2])

    domain = _event(lambda t, s: math.sqrt(s[0] ** 2 + s[1] ** 2 + s[2] ** 2) - config.ball_radius, 1.0)
    events = [guard, domain]
    if stop_radius is not None:
        events.append(_event(lambda t, s: math.sqrt(s[0] ** 2 + s[1] ** 2 + s[2] ** 2) - stop_radius, -1.0))

    sol = solve_ivp(
        rhs, (t0, config.t_max), p0.as_array(), method=config.method,
        rtol=config.rtol, atol=config.atol, max_step=config.max_step, events=events,
    )
    if sol.status == -1:
        raise StepUnderflow(sol.message, float(sol.t[-1]), Point3.from_array(sol.y[:, -1]))
    times = np.array(sol.t, dtype=float)
    points = np.array(sol.y.T, dtype=float)
    event = None
    hit = _earliest_event(sol) if sol.status == 1 else None
    if hit is not None:
        index, t_hit, y_hit = hit
        if index == 0:
            y_hit[2] = 0.0
            kind = EventKind.CROSS
        elif index == 1:
            kind = EventKind.DOMAIN_EXIT
        else:
            kind = EventKind.TARGET_REACHED
        times[-1] = t_hit
        points[-1] = y_hit
        event = Event(t_hit, Point3.from_array(y_hit), kind)
    return Segment(mode, times, points), event


def slide(system, p0, config, t0=0.0, stop_radius=None, require_sliding=True):
    """Follow the sliding field from p0.

    Integrates the normalized field in its own time with the physical time
    as an extra state. Returns (Segment, Event or None, TerminalStatus or None):
    ExitSliding at S_X or S_Y, DomainExit, or a terminal status
    (PseudoEquilibrium, TMax).
    """
    if abs(p0.z) > config.event_tol:
        raise PreconditionError(f"{p0} is not on the switching plane")
    p0 = p0.on_plane()
    if require_sliding and classify_region(system, p0, config.boundary_tol) is not RegionLabel.SLIDING:
        raise PreconditionError(f"{p0} is not in the sliding region")
    remaining = config.t_max - t0
    if remaining <= 0.0:
        return _single_point(Mode.SLIDING, t0, p0), None, TerminalStatus.T_MAX
    f1, f2 = normalized_components(system, p0.x, p0.y)
    if math.hypot(f1, f2) <= config.speed_tol:
        return _single_point(Mode.SLIDING, t0, p0), None, TerminalStatus.PSEUDO_EQUILIBRIUM

    def rhs(tau, s):
        x3, y3 = system.normals(s[0], s[1])
        g1, g2 = normalized_components(system, s[0], s[1])
        return (g1, g2, y3 - x3)

    exit_x = _event(lambda tau, s: system.normals(s[0], s[1])[0], 1.0)
    exit_y = _event(lambda tau, s: system.normals(s[0], s[1])[1], -1.0)
    still = _event(lambda tau, s: math.hypot(*normalized_components(system, s[0], s[1])) - config.speed_tol, -1.0)
    clock = _event(lambda tau, s: s[2] - remaining, 1.0)
    domain = _event(lambda tau, s: math.hypot(s[0], s[1]) - config.ball_radius, 1.0)
    events = [exit_x, exit_y, still, clock, domain]
    if stop_radius is not None:
        events.append(_event(lambda tau, s: math.hypot(s[0], s[1]) - stop_radius, -1.0))

    sol = solve_ivp(
        rhs, (0.0, config.tau_max), np.array([p0.x, p0.y, 0.0]), method=config.method,
        rtol=config.rtol, atol=config.atol, max_step=config.max_step, events=events,
    )
    if sol.status == -1:
        raise StepUnderflow(sol.message, t0 + float(sol.y[2, -1]), Point3(sol.y[0, -1], sol.y[1, -1], 0.0))
    states = np.array(sol.y.T, dtype=float)
    hit = _earliest_event(sol) if sol.status == 1 else None
    if hit is not None:
        states[-1] = hit[2]
    times = t0 + states[:, 2]
    points = np.column_stack([states[:, 0], states[:, 1], np.zeros(len(states))])
    segment = Segment(Mode.SLIDING, times, points)
    end = segment.end
    if hit is None:
        logger.warning("sliding segment from %s used the whole normalized-time budget", p0)
        return segment, None, TerminalStatus.T_MAX
    index = hit[0]
    if index == 0:
        return segment, Event(segment.t_end, end, EventKind.EXIT_SLIDING, "S_X"), None
    if index == 1:
        return segment, Event(segment.t_end, end, EventKind.EXIT_SLIDING, "S_Y"), None
    if index == 2:
        return segment, None, TerminalStatus.PSEUDO_EQUILIBRIUM
    if index == 3:
        return segment, None, TerminalStatus.T_MAX
    if index == 4:
        return segment, Event(segment.t_end, end, EventKind.DOMAIN_EXIT), None
    return segment, Event(segment.t_end, end, EventKind.TARGET_REACHED), None


class _Simulation:
    """State shared by the branches of one simulate() call."""

    def __init__(self, system, config, stop_on, stop_radius):
        self.system = system
        self.config = config
        self.stop_on = frozenset(stop_on)
        self.stop_radius = stop_radius
        self.branches = 1

    # --- mode selection on the plane ---

    def choose(self, traj, p):
        """Modes available at a point of the plane, or a terminal status."""
        tol = self.config.boundary_tol
        label = classify_region(self.system, p, tol)
        if label is RegionLabel.CROSSING_PLUS:
            return label, [Mode.X], None
        if label is RegionLabel.CROSSING_MINUS:
            return label, [Mode.Y], None
        if label is RegionLabel.SLIDING:
            return label, [Mode.SLIDING], None
        if label is RegionLabel.ESCAPING:
            return label, self.escape_modes(traj, p), None

        traj.note("tangential points resolved by the first non-zero Lie derivative")
        x_leaves = field_enters(self.system, Field.X, p, tol)
        y_leaves = field_enters(self.system, Field.Y, p, tol)
        if x_leaves and y_leaves:
            return label, self.escape_modes(traj, p), None
        if x_leaves:
            return label, [Mode.X], None
        if y_leaves:
            return label, [Mode.Y], None
        f1, f2 = normalized_components(self.system, p.x, p.y)
        speed = math.hypot(f1, f2)
        if speed <= self.config.speed_tol:
            return label, [], TerminalStatus.PSEUDO_EQUILIBRIUM
        h = 1e-7 * max(1.0, p.norm())
        ahead = Point3.planar(p.x + h * f1 / speed, p.y + h * f2 / speed)
        if classify_region(self.system, ahead, tol) is RegionLabel.SLIDING:
            return label, [Mode.SLIDING], None
        return label, [], TerminalStatus.STUCK

    def escape_modes(self, traj, p):
        policy = self.config.escape_policy
        if policy is EscapePolicy.X:
            return [Mode.X]
        if policy is EscapePolicy.Y:
            return [Mode.Y]
        if self.branches >= self.config.max_branches:
            logger.warning("branch limit %d reached at %s; following X", self.config.max_branches, p)
            traj.note("branch limit reached: escaping points followed along X")
            return [Mode.X]
        return [Mode.X, Mode.Y]

    # --- driver ---

    def run(self, p0):
        root = HybridTrajectory(start=p0)
        pending = [(root, p0, 0.0, None, None)]
        finished = []
        while pending:
            traj, p, t, arrival, forced = pending.pop(0)
            self.advance(traj, p, t, arrival, pending, forced)
            finished.append(traj)
        return finished

    def record(self, traj, event):
        traj.events.append(replace(event, segment=len(traj.segments)))
        return event.kind in self.stop_on

    def finish(self, traj, status, p, t):
        if not traj.segments:
            traj.segments.append(_single_point(_mode_at(p, self.config.event_tol), t, p))
        traj.terminal_status = status

    def advance(self, traj, p, t, arrival, pending, forced=None):
        """Run one branch to a terminal status; escaping points may queue new branches.

        ``forced`` fixes the first mode of a branch queued at an escaping point.
        """
        config = self.config
        stalls = 0
        while True:
            if len(traj.events) >= config.max_events:
                traj.events.append(Event(t, p, EventKind.ZENO_GUARD, segment=len(traj.segments)))
                return self.finish(traj, TerminalStatus.ZENO_GUARD, p, t)
            if t >= config.t_max:
                return self.finish(traj, TerminalStatus.T_MAX, p, t)
            if self.stop_radius is not None and p.norm() <= self.stop_radius:
                return self.finish(traj, TerminalStatus.STOPPED, p, t)

            if forced is not None:
                modes, status, forced = [forced], None, None
            elif p.z > config.event_tol:
                modes, status = [Mode.X], None
            elif p.z < -config.event_tol:
                modes, status = [Mode.Y], None
            else:
                p = p.on_plane()
                label, modes, status = self.choose(traj, p)
                kind = self.arrival_kind(arrival, label, modes)
                if kind is not None and self.record(traj, Event(t, p, kind)):
                    return self.finish(traj, TerminalStatus.STOPPED, p, t)
            arrival = None
            if status is not None:
                return self.finish(traj, status, p, t)
            if len(modes) == 2:
                self.branches += 1
                twin = traj.copy(traj.branch + "Y")
                traj.branch += "X"
                pending.append((twin, p, t, None, Mode.Y))
                logger.debug("escaping point %s: branch %s queued", p, twin.branch)
            mode = modes[0]

            try:
                if mode is Mode.SLIDING:
                    seg, event, status = slide(
                        self.system, p, config, t0=t, stop_radius=self.stop_radius, require_sliding=False,
                    )
                else:
                    field = Field.X if mode is Mode.X else Field.Y
                    seg, event = integrate_to_event(self.system, field, p, config, t0=t, stop_radius=self.stop_radius)
                    status = None if event is not None else TerminalStatus.T_MAX
            except StepUnderflow as err:
                logger.warning("step size underflow at t=%r: %s", err.time, err)
                traj.note(f"integration stopped by step-size underflow at t={err.time!r}")
                return self.finish(traj, TerminalStatus.STEP_UNDERFLOW, err.point, err.time)

            traj.segments.append(seg)
            p, t = seg.end, seg.t_end
            stalls = stalls + 1 if seg.duration <= 0.0 else 0
            if stalls >= 3:
                return self.finish(traj, TerminalStatus.STUCK, p, t)
            if status is not None:
                return self.finish(traj, status, p, t)
            if event is None:
                return self.finish(traj, TerminalStatus.T_MAX, p, t)
            if event.kind is EventKind.DOMAIN_EXIT:
                self.record(traj, event)
                return self.finish(traj, TerminalStatus.DOMAIN_EXIT, p, t)
            if event.kind is EventKind.TARGET_REACHED:
                return self.finish(traj, TerminalStatus.STOPPED, p, t)
            if event.kind is EventKind.EXIT_SLIDING:
                if self.record(traj, event):
                    return self.finish(traj, TerminalStatus.STOPPED, p, t)
                arrival = Mode.SLIDING
            else:
                arrival = mode

    @staticmethod
    def arrival_kind(arrival, label, modes):
        """Event recorded when a trajectory reaches (or starts on) the plane."""
        if modes == [Mode.SLIDING]:
            return None if arrival is Mode.SLIDING else EventKind.ENTER_SLIDING
        if len(modes) == 2:
            return EventKind.ESCAPE_SPLIT
        if arrival in (None, Mode.SLIDING):
            return None
        if label is RegionLabel.TANGENTIAL:
            return EventKind.TANGENCY_HIT
        return EventKind.CROSS


def simulate(system, p0, config=None, stop_on=(), stop_radius=None):
    """Simulate the Filippov trajectory (or trajectories) through p0.

    Escaping points under the Both policy fork the trajectory; the result
    lists every branch, X-first. ``stop_on`` names event kinds that end a
    branch with status Stopped; ``stop_radius`` ends it once it comes
    within that distance of the origin.
    """
    config = config or SimConfig()
    if p0.norm() > config.ball_radius:
        raise PreconditionError(f"start point {p0} lies outside the ball of radius {config.ball_radius!r}")
    return _Simulation(system, config, stop_on, stop_radius).run(p0)
