from __future__ import annotations
import argparse

from chatterplan.errors import EXIT_OK
from chatterplan.surfaces import classify, synthesize_approach

from ._args import parse_floats
from ._output import emit_json, open_out


def add_subparser(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser(
        "classify",
        parents=[common],
        help="Name the region of a scaled 3rd-order state",
    )
    parser.add_argument(
        "--y",
        required=True,
        type=parse_floats,
        help="Scaled state y1,y2,y3",
    )
    parser.add_argument(
        "--approach",
        action="store_true",
        help="Print the approach plan as JSON instead of the label",
    )
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    tol = 1e-9 if args.tol is None else args.tol
    if args.approach:
        plan = synthesize_approach(args.y, tol)
        emit_json(plan, args.out)
        return EXIT_OK
    with open_out(args.out) as fp:
        print(classify(args.y, tol), file=fp)
    return EXIT_OK
