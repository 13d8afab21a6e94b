from __future__ import annotations
import argparse

from chatterplan.errors import EXIT_OK
from chatterplan.nonexistence import run_recursion, write_recursion_csv

from ._output import open_out


def add_subparser(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser(
        "recursion",
        parents=[common],
        help="Run the junction-time recursion of the 4th-order chain",
        description="CSV columns: i,tau_i,r_i,i_times_r_i,raabe",
    )
    parser.add_argument("--tau1", type=float, default=1.0)
    parser.add_argument("--tau2", type=float, default=0.9)
    parser.add_argument(
        "-n", "--steps", dest="steps", type=int, default=100_000
    )
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    state = run_recursion(args.tau1, args.tau2, args.steps)
    with open_out(args.out) as fp:
        write_recursion_csv(state, fp)
    return EXIT_OK
