from __future__ import annotations
import argparse

from chatterplan.errors import EXIT_OK
from chatterplan.surfaces import (
    SurfaceKind,
    default_params,
    mesh,
    write_mesh_csv,
)

from ._args import parse_floats
from ._output import open_out

ALL = "all"


def add_subparser(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser(
        "surfaces",
        parents=[common],
        help="Mesh the switching surfaces",
        description="CSV columns: surface,a,t1,t2,y1,y2,y3",
    )
    parser.add_argument(
        "--surface",
        choices=[*(kind.value for kind in SurfaceKind), ALL],
        default=ALL,
    )
    parser.add_argument(
        "--a",
        dest="a_values",
        type=parse_floats,
        default=[0.5, 1.0, 2.0],
        help="Comma-separated scales (default: 0.5,1,2)",
    )
    parser.add_argument(
        "--count",
        type=int,
        default=50,
        help="Points per scale along the free parameter (default: 50)",
    )
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    kinds = (
        list(SurfaceKind)
        if args.surface == ALL
        else [SurfaceKind(args.surface)]
    )
    rows = [
        row
        for kind in kinds
        for row in mesh(kind, args.a_values, default_params(kind, args.count))
    ]
    with open_out(args.out) as fp:
        write_mesh_csv(rows, fp)
    return EXIT_OK
