"""
Scaling of the chattering solution with its starting point.

Starting from `a * e1` instead of `e1` stretches time by `a` and component
`k` by `a**k`. The cost picks up `a**4`.
"""

from __future__ import annotations
from typing import Optional

import numpy as np

import splatlog

from chatterplan.core import ChatteringConstants
from chatterplan.dynamics import states_at
from chatterplan.errors import ParamOutOfRange
from chatterplan.typings import FloatArray

from .cycles import E1, build_chattering_schedule

__all__ = ["homogeneity_check"]

log = splatlog.get_logger(__name__)


def homogeneity_check(
    c: ChatteringConstants,
    a: float,
    grid: Optional[FloatArray] = None,
    n_cycles: int = 10,
) -> float:
    """
    Largest `|y_k(tau; a) - a**k y_k(tau / a; 1)|` over `grid` (absolute
    scaled times) and `k = 1 .. 3`. Defaults to 2001 points across the first
    `n_cycles` cycles of the stretched schedule.

    ##### Examples #####

    ```python
    >>> from chatterplan.chattering import solve_constants
    >>> c = solve_constants()

    >>> homogeneity_check(c, 1.0)
    0.0
    >>> all(homogeneity_check(c, a) <= 1e-8 for a in (0.1, 0.5, 2.0, 10.0))
    True

    ```

    Starting at `alpha * e1` is the same as starting one cycle in:

    ```python
    >>> from chatterplan.dynamics import states_at
    >>> full = build_chattering_schedule(c, 10)
    >>> times = np.linspace(0.0, c.junction_time(5) - c.tau1, 101)
    >>> shifted = states_at([1.0, 0.0, 0.0], full, times + c.tau1)
    >>> scaled = states_at(
    ...     [c.alpha, 0.0, 0.0],
    ...     build_chattering_schedule(c, 10, scale=c.alpha),
    ...     times,
    ... )
    >>> float(np.max(np.abs(shifted - scaled))) <= 1e-8
    True

    >>> homogeneity_check(c, 0.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: a must be positive, given 0.0

    ```
    """
    if not a > 0:
        raise ParamOutOfRange(f"a must be positive, given {a!r}", a=a)
    stretched = build_chattering_schedule(c, n_cycles, scale=a)
    unit = build_chattering_schedule(c, n_cycles)
    times = (
        np.linspace(0.0, stretched.duration, 2001)
        if grid is None
        else np.asarray(grid, dtype=np.float64)
    )
    y_a = states_at(np.multiply(a, E1), stretched, times)
    y_1 = states_at(E1, unit, times / a)
    powers = a ** np.arange(1, 4)
    deviation = float(np.max(np.abs(y_a - y_1 * powers)))
    log.debug("Homogeneity deviation", a=a, deviation=deviation)
    return deviation
