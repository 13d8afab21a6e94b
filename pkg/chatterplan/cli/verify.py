from __future__ import annotations
import argparse
from typing import Sequence

from rich.table import Table
from rich.text import Text

from chatterplan.acceptance import CHECK_GROUPS, Check, run_checks
from chatterplan.config import DEFAULTS
from chatterplan.errors import EXIT_OK, EXIT_SOLVER_FAILURE

from ._output import STDOUT, emit_json, stdout_console


def add_subparser(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser(
        "verify",
        parents=[common],
        help="Run the reference checks and print a pass/fail table",
        description=(
            "Exits 0 when every check passes. With --out the results are "
            "also written there as JSON."
        ),
    )
    parser.add_argument(
        "--group",
        dest="groups",
        action="append",
        choices=list(CHECK_GROUPS),
        help="Only run this group; repeatable (default: all)",
    )
    parser.set_defaults(func=run)


def check_table(checks: Sequence[Check]) -> Table:
    table = Table(title="chatterplan verify")
    table.add_column("group", style="cyan")
    table.add_column("check")
    table.add_column("expected", justify="right")
    table.add_column("computed", justify="right")
    table.add_column("", justify="center")
    for check in checks:
        table.add_row(
            check.group,
            check.name,
            check.expectation(),
            f"{check.computed:.10g}",
            Text("pass", style="green")
            if check.passed
            else Text("FAIL", style="bold red"),
        )
    return table


def run(args: argparse.Namespace) -> int:
    tol = DEFAULTS["tol"] if args.tol is None else args.tol
    checks = run_checks(args.groups, tol)
    stdout_console().print(check_table(checks))
    if args.out not in (None, STDOUT):
        emit_json(checks, args.out)
    failed = sum(not check.passed for check in checks)
    return EXIT_SOLVER_FAILURE if failed else EXIT_OK
