from __future__ import annotations
import argparse
import dataclasses
from typing import Any, Optional

import splatlog

from chatterplan.chattering import solve_constants
from chatterplan.config import PlanRequest, load_config
from chatterplan.core import PiecewiseControl
from chatterplan.dynamics import audit, derive_switching_law, write_csv
from chatterplan.errors import EXIT_OK, ChatterplanError
from chatterplan.planner import (
    compare_mim,
    plan_rest_to_rest,
    solve_problem7,
    solve_problem7_mim,
)

from ._output import emit_json, open_out

log = splatlog.get_logger(__name__)

DEFAULT_TRAJECTORY_PATH = "trajectory.csv"


def add_subparser(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser(
        "plan",
        parents=[common],
        help="Plan a trajectory from a JSON config",
        description=(
            "Write the sampled trajectory as CSV to --out (default: "
            f"{DEFAULT_TRAJECTORY_PATH}) and the plan report as JSON to "
            "--report."
        ),
    )
    parser.add_argument(
        "--config", required=True, help="Path to the JSON plan config"
    )
    parser.add_argument(
        "--cycles",
        type=int,
        help="Chattering cycles to build (overrides the config)",
    )
    parser.add_argument(
        "--report",
        default="-",
        help="Destination for the JSON report (default: stdout)",
    )
    parser.set_defaults(func=run)


def _switching_law(
    control: PiecewiseControl, x0: Any, bounds: Any
) -> Optional[str]:
    try:
        return str(derive_switching_law(control, x0, bounds))
    except ChatterplanError as error:
        log.warning(
            "Could not derive switching law",
            error=type(error).__name__,
            message=error.message,
        )
        return None


def plan_report(request: PlanRequest) -> tuple[Any, dict[str, Any]]:
    """The sampled trajectory and the JSON report for `request`."""
    c = solve_constants(request.tol)
    spec = request.spec

    if request.mode == "rest_to_rest":
        plan = plan_rest_to_rest(
            spec, request.tol, n_cycles=request.cycles, dt=request.dt, c=c
        )
        report = plan.to_json_encodable()
    else:
        if request.mode == "mim":
            plan = solve_problem7_mim(spec, dt=request.dt)
        else:
            plan = solve_problem7(spec, c, request.cycles, request.dt)
        report = {
            **plan.to_json_encodable(),
            "max_violation": audit(plan.trajectory, spec.bounds).max_violation,
        }
        if request.mode == "mim":
            report["comparison"] = compare_mim(spec, c)

    report["switching_law"] = _switching_law(
        plan.control, spec.x0, spec.bounds
    )
    return plan.trajectory, {
        "mode": request.mode,
        "cycles": request.cycles,
        "tol": request.tol,
        "dt": request.dt,
        **report,
    }


def run(args: argparse.Namespace) -> int:
    request = load_config(args.config)
    overrides = {}
    if args.cycles is not None:
        overrides["cycles"] = args.cycles
    if args.tol is not None:
        overrides["tol"] = args.tol
    if overrides:
        request = dataclasses.replace(request, **overrides)

    trajectory, report = plan_report(request)
    out = DEFAULT_TRAJECTORY_PATH if args.out is None else args.out
    with open_out(out) as fp:
        write_csv(trajectory, fp)
    emit_json(report, args.report)
    return EXIT_OK
