from __future__ import annotations
import argparse
import dataclasses

from chatterplan.chattering import check_tol, full_residuals, solve_constants
from chatterplan.config import DEFAULTS
from chatterplan.errors import EXIT_OK, EXIT_SOLVER_FAILURE, UsageError

from ._output import emit_json, report_error


def add_subparser(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser(
        "constants",
        parents=[common],
        help="Solve the chattering constants",
        description=(
            "Print alpha, the betas, tau1, tau_inf and the costs as JSON. "
            "With --tol the defining-equation residuals are included."
        ),
    )
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    tol = DEFAULTS["tol"] if args.tol is None else args.tol
    try:
        check_tol(tol)
    except UsageError as error:
        # A bad tolerance is a failed solve here, not a usage error.
        report_error(error)
        return EXIT_SOLVER_FAILURE

    c = solve_constants(tol)
    doc = dataclasses.asdict(c)
    if args.tol is not None:
        doc["tol"] = tol
        doc["residuals"] = full_residuals(c)
    emit_json(doc, args.out)
    return EXIT_OK
