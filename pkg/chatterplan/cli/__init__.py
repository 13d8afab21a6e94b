"""
The `chatterplan` command. Each subcommand lives in its own module with an
`add_subparser(sub, common)` that registers it and a `run(args)` that
returns the exit code.

| Exit code | Meaning                                           |
| --------- | ------------------------------------------------- |
| 0         | OK                                                |
| 1         | Usage: bad flags, malformed or out-of-range input |
| 2         | A solver failed (or a `verify` check did)         |
| 3         | The request is infeasible                         |

##### Examples #####

```python
>>> main(["classify", "--y", "1,0,0"])
OmegaMinus
0

>>> main(["sweep", "--from", "0.16", "--to", "0.17", "--step", "0.01"])
alpha,tau1,beta1,beta2,j1,j
0.16,...
0.17,...
0

```

Errors print their name to stderr and pick the exit code:

```python
>>> main(["constants", "--tol", "-1"])
2
>>> main(["classify", "--y=-2.1,1.5,0"])
OmegaInfeasible
0
>>> main(["classify", "--y=-2.1,1.5,0", "--approach"])
3
>>> main(["recursion", "-n", "5"])
1

```
"""

from __future__ import annotations
import argparse
from typing import Optional, Sequence

import splatlog

from chatterplan.errors import EXIT_OK, EXIT_USAGE, ChatterplanError
from chatterplan.setup import setup

from . import (
    classify,
    constants,
    plan,
    recursion,
    surfaces,
    sweep,
    verify,
)
from ._args import common_parser
from ._output import report_error

__all__ = ["build_parser", "main"]

log = splatlog.get_logger(__name__)

SUBCOMMANDS = (constants, plan, sweep, surfaces, classify, recursion, verify)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chatterplan",
        description=(
            "Time-optimal planning for chain-of-integrator systems with "
            "chattering arcs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = common_parser()
    for module in SUBCOMMANDS:
        module.add_subparser(sub, common)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ChatterplanError as error:
        return report_error(error)
    except SystemExit as stop:
        # argparse exits 2 on bad flags; those are usage errors here.
        return EXIT_USAGE if stop.code else EXIT_OK

    setup(verbosity=args.verbosity)
    log.debug("Running command", command=args.command)
    try:
        return args.func(args)
    except ChatterplanError as error:
        return report_error(error)
