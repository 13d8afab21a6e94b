from __future__ import annotations
import argparse

import numpy as np

from chatterplan.chattering import sweep, write_sweep_csv
from chatterplan.config import DEFAULTS
from chatterplan.errors import EXIT_OK, ParamOutOfRange

from ._output import open_out


def add_subparser(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser(
        "sweep",
        parents=[common],
        help="Evaluate the attenuation-rate family on a grid",
        description="CSV columns: alpha,tau1,beta1,beta2,j1,j",
    )
    parser.add_argument("--from", dest="start", type=float, default=0.0)
    parser.add_argument("--to", dest="stop", type=float, default=0.5)
    parser.add_argument("--step", type=float, default=1e-3)
    parser.set_defaults(func=run)


def alpha_grid(start: float, stop: float, step: float) -> np.ndarray:
    """
    ##### Examples #####

    ```python
    >>> alpha_grid(0.0, 0.5, 0.1)
    array([0. , 0.1, 0.2, 0.3, 0.4, 0.5])

    >>> alpha_grid(0.0, 0.5, 0.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: step must be positive, given 0.0

    ```
    """
    if not step > 0:
        raise ParamOutOfRange(f"step must be positive, given {step!r}")
    if not 0.0 <= start <= stop < 1.0:
        raise ParamOutOfRange(
            f"expected 0 <= from <= to < 1, given {start!r}, {stop!r}",
            start=start,
            stop=stop,
        )
    return np.linspace(start, stop, int(round((stop - start) / step)) + 1)


def run(args: argparse.Namespace) -> int:
    tol = DEFAULTS["tol"] if args.tol is None else args.tol
    points = sweep(alpha_grid(args.start, args.stop, args.step), tol)
    with open_out(args.out) as fp:
        write_sweep_csv(points, fp)
    return EXIT_OK
