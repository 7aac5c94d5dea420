"""Problem files, plan JSON, trajectory CSV and run reports."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import EquilibriumPoint
from .errors import ProblemParseError
from .planner import Plan, PlanningProblem
from .simulator import Trajectory
from .steering import Phase, Sinusoid

CSV_COLUMNS = ("t", "z1", "z2", "z3", "z4", "z5", "z6", "u1", "u2", "phase_index")


def fmt(x: float) -> str:
    # 17 significant digits round-trip every double
    return format(float(x), ".17g")


@dataclass(frozen=True)
class ProblemFile:
    start: tuple[float, float, float]
    goal: tuple[float, float, float]
    T: float = 1.0
    omega: float | None = None
    dt: float | None = None
    compress: bool = True

    def problem(self) -> PlanningProblem:
        return PlanningProblem(
            EquilibriumPoint(*self.start), EquilibriumPoint(*self.goal), self.T, self.omega
        )


def _triple(raw, key):
    if not isinstance(raw, list) or len(raw) != 3:
        raise ProblemParseError(f"'{key}' must be a list of 3 numbers")
    return tuple(_number(v, key) for v in raw)


def _number(raw, key):
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ProblemParseError(f"'{key}' must be a number, got {raw!r}")
    return float(raw)


def parse_problem(data) -> ProblemFile:
    if not isinstance(data, dict):
        raise ProblemParseError("problem file must contain a JSON object")
    unknown = set(data) - {"start", "goal", "T", "omega", "dt", "compress"}
    if unknown:
        raise ProblemParseError(f"unknown fields: {sorted(unknown)}")
    for key in ("start", "goal"):
        if key not in data:
            raise ProblemParseError(f"missing required field '{key}'")
    compress = data.get("compress", True)
    if not isinstance(compress, bool):
        raise ProblemParseError("'compress' must be true or false")
    opt = {k: None if data.get(k) is None else _number(data[k], k) for k in ("omega", "dt")}
    return ProblemFile(
        start=_triple(data["start"], "start"),
        goal=_triple(data["goal"], "goal"),
        T=_number(data.get("T", 1.0), "T"),
        compress=compress,
        **opt,
    )


def load_problem(path) -> ProblemFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemParseError(f"cannot read problem file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemParseError(f"invalid JSON in {path}: {exc}") from exc
    return parse_problem(data)


def plan_to_dict(plan: Plan) -> dict:
    return {
        "phases": [
            {
                "label": p.label,
                "channel": p.channel.value,
                "amplitude": p.amplitude,
                "omega": p.signal.omega,
                "duration": p.duration,
                "displacement": p.signal.displacement,
            }
            for p in plan.phases
        ],
        "waypoints": plan.waypoints.tolist(),
        "total_duration": plan.total_duration,
    }


def plan_from_dict(data: dict) -> Plan:
    phases = tuple(
        Phase(p["channel"], Sinusoid(p["amplitude"], p["omega"], p["duration"]), p.get("label", ""))
        for p in data["phases"]
    )
    return Plan(phases, np.array(data["waypoints"], dtype=float))


def dump_plan(plan: Plan, path) -> None:
    Path(path).write_text(json.dumps(plan_to_dict(plan), indent=2) + "\n")


def load_plan(path) -> Plan:
    return plan_from_dict(json.loads(Path(path).read_text()))


def write_trajectory_csv(traj: Trajectory, path) -> None:
    inputs = traj.inputs if traj.inputs is not None else np.full((len(traj), 2), math.nan)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for t, z, u, k in zip(traj.t, traj.states, inputs, traj.phase_index):
            writer.writerow([fmt(t), *map(fmt, z), *map(fmt, u), int(k)])


def read_trajectory_csv(path) -> Trajectory:
    """Parse a trajectory CSV; ``dt`` and phase boundaries are inferred."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {header}")
        rows = [row for row in reader if row]
    values = np.array([[float(v) for v in row[:9]] for row in rows]).reshape(-1, 9)
    phase_index = np.array([int(row[9]) for row in rows], dtype=int)
    t, states, inputs = values[:, 0], values[:, 1:7], values[:, 7:9]
    if np.all(np.isnan(inputs)):
        inputs = None
    dt = float((t[-1] - t[0]) / (len(t) - 1)) if len(t) > 1 else 1.0
    bounds = [0] + [k for k in range(1, len(t)) if phase_index[k] != phase_index[k - 1]]
    if len(t) > 1 and bounds[-1] != len(t) - 1:
        bounds.append(len(t) - 1)
    return Trajectory(t, states, inputs, phase_index, dt, tuple(bounds))


def write_json(data, path) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n")
