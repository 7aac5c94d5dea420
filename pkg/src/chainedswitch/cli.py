"""Command-line entry points.

Exit codes: 0 success, 2 unparsable input, 3 invalid problem, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import ChainedFormError, ProblemParseError
from .fileio import dump_plan, load_problem, plan_to_dict, write_json, write_trajectory_csv
from .planner import compress, synthesize
from .plotting import emit_plot
from .simulator import SimConfig, compare, oracle_trajectory, simulate

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_IO = 0, 2, 3, 4

def _build_plan(problem_file, no_compress=False):
    plan = synthesize(problem_file.problem())
    if problem_file.compress and not no_compress:
        plan = compress(plan, 0.0)
    return plan

def cmd_plan(args) -> int:
    pf = load_problem(args.problem)
    plan = _build_plan(pf)
    json.dump(plan_to_dict(plan), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK

def cmd_simulate(args) -> int:
    pf = load_problem(args.problem)
    plan = _build_plan(pf, args.no_compress)
    dt = args.dt if args.dt is not None else pf.dt
    goal = pf.problem().goal.state()
    traj = simulate(plan, plan.start, SimConfig(dt))
    oracle = oracle_trajectory(plan, plan.start, traj.dt)

    out = Path(args.out)
    paths = {name: out / name for name in ("trajectory.csv", "plan.json", "report.json", "plot.svg")}
    report = {
        "plan": [
            {
                "label": p.label,
                "channel": p.channel.value,
                "amplitude": p.amplitude,
                "displacement": p.signal.displacement,
            }
            for p in plan.phases
        ],
        "dt": traj.dt,
        "final_state": traj.final.tolist(),
        "final_state_error": float(np.max(np.abs(traj.final - goal))),
        "oracle_final_error": float(np.max(np.abs(oracle.final - goal))),
        "oracle_deviation": compare(traj, oracle),
        "files": {k: str(v) for k, v in paths.items()},
    }
    try:
        out.mkdir(parents=True, exist_ok=True)
        write_trajectory_csv(traj, paths["trajectory.csv"])
        dump_plan(plan, paths["plan.json"])
        emit_plot(traj, paths["plot.svg"])
        write_json(report, paths["report.json"])
    except OSError as exc:
        print(f"error: cannot write to {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainedswitch",
        description="State-switching motion planning for the second-order chained form.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="print the maneuver plan as JSON")
    p.add_argument("problem", help="problem JSON file")
    p.set_defaults(func=cmd_plan)

    s = sub.add_parser("simulate", help="simulate the plan and write CSV/JSON/SVG outputs")
    s.add_argument("problem", help="problem JSON file")
    s.add_argument("--out", required=True, help="output directory")
    s.add_argument("--dt", type=float, default=None, help="integration step [s]")
    s.add_argument("--no-compress", action="store_true", help="keep zero-amplitude phases")
    s.set_defaults(func=cmd_simulate)
    return parser

def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ProblemParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ChainedFormError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID

if __name__ == "__main__":
    sys.exit(main())
