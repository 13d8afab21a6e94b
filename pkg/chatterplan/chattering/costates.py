"""
Costates of the chattering solution.

On cycle `i` the costate `p1` is the cubic `-(p0 / 6) * prod(tau - root_k)`
with roots at fractions `beta1`, `beta2`, `beta3` of the cycle, `p2 = -p1'`
and `p3 = p1''`. Both `p1` and `p2` are continuous at junctions. `p3` jumps
up by `mu_i` there, and `p1` is strictly positive there.

`mu_i / (p0 * alpha**(i - 1))` is the same for every cycle, about
`1.4494594`.
"""

from __future__ import annotations
from typing import Optional

import numpy as np

import splatlog

from chatterplan.core import ChatteringConstants, CostateArc
from chatterplan.errors import ParamOutOfRange
from chatterplan.typings import FloatArray

from .cycles import CYCLE_LEVELS

__all__ = [
    "SWITCHING_ATOL",
    "costates",
    "junction_jump",
    "scaled_costates",
    "switching_function_check",
]

log = splatlog.get_logger(__name__)

# Below this `|p1|` the sign of the switching function is not checked.
SWITCHING_ATOL = 1e-12

DEFAULT_GRID = np.linspace(0.0, 1.0, 2001)


def junction_jump(c: ChatteringConstants, p0: float, length: float) -> float:
    """`p3(tau_i+) - p3(tau_i-)` at the end of a cycle of `length`."""
    return p0 * length * (1.0 - sum(c.betas) * (1.0 - c.alpha) / 3.0)


def costates(c: ChatteringConstants, p0: float, i: int) -> CostateArc:
    """
    ##### Examples #####

    ```python
    >>> from chatterplan.chattering import solve_constants
    >>> c = solve_constants()

    >>> arcs = [costates(c, 1.0, i) for i in range(1, 6)]
    >>> ratios = [arc.mu / c.alpha ** (arc.index - 1) for arc in arcs]
    >>> all(abs(r - 1.4494594) < 1e-5 for r in ratios)
    True

    ```

    Sign pattern of `p1` across the first cycle, `+ - +`, opposite to the
    control `-1, +1, -1`:

    ```python
    >>> arc = arcs[0]
    >>> fractions = np.array([0.2, 0.7, 0.95])
    >>> np.sign(arc.evaluate_local(fractions * arc.length)[0])
    array([ 1., -1.,  1.])

    ```

    `p1` and `p2` match across a junction, `p3` jumps by `mu`:

    ```python
    >>> left = arcs[0].evaluate_local(arcs[0].length)
    >>> right = arcs[1].evaluate_local(0.0)
    >>> bool(np.allclose(left[:2], right[:2], rtol=1e-9, atol=0))
    True
    >>> abs((right[2] - left[2]) - arcs[0].mu) < 1e-12
    True
    >>> left[0] > 0
    True

    >>> costates(c, 0.0, 1)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: p0 must be positive, given 0.0

    ```
    """
    if not p0 > 0:
        raise ParamOutOfRange(f"p0 must be positive, given {p0!r}", p0=p0)
    if i < 1:
        raise ParamOutOfRange(f"cycle index must be >= 1, given {i}", i=i)
    length = c.cycle_length(i)
    return CostateArc(
        p0=p0,
        index=i,
        tau_start=c.junction_time(i - 1),
        tau_end=c.junction_time(i),
        length=length,
        betas=c.betas,
        mu=junction_jump(c, p0, length),
    )


def scaled_costates(
    c: ChatteringConstants,
    p0: float,
    i: int,
    grid: Optional[FloatArray] = None,
) -> FloatArray:
    """
    `p_k * ((tau_inf - tau) / tau_inf)**(k - 4)` on cycle `i`, at the cycle
    fractions in `grid`. Shape `(3, len(grid))`.

    The remaining time is formed as `L_i * (1 / (1 - alpha) - f)` so nothing
    cancels deep into the chattering.

    ##### Examples #####

    The scaled costates repeat from cycle to cycle:

    ```python
    >>> from chatterplan.chattering import solve_constants
    >>> c = solve_constants()

    >>> peaks = np.array([
    ...     np.max(np.abs(scaled_costates(c, 1.0, i)), axis=1)
    ...     for i in range(1, 11)
    ... ])
    >>> bool(np.allclose(peaks, peaks[0], rtol=1e-6, atol=0))
    True

    ```
    """
    fractions = DEFAULT_GRID if grid is None else np.asarray(grid, float)
    arc = costates(c, p0, i)
    p = arc.evaluate_local(fractions * arc.length)
    remaining = arc.length * (1.0 / (1.0 - c.alpha) - fractions)
    ratio = remaining / c.tau_inf
    powers = np.array([-3.0, -2.0, -1.0]).reshape(3, 1)
    return p * ratio**powers


def switching_function_check(
    c: ChatteringConstants,
    p0: float = 1.0,
    n_cycles: int = 10,
    grid: Optional[FloatArray] = None,
) -> float:
    """
    Check `v == -sign(p1)` wherever `|p1| > SWITCHING_ATOL`, over cycles
    `1 .. n_cycles` at the cycle fractions in `grid`.

    Returns the largest `v * p1` among the checked points that agree in sign
    with the control, or `0.0` when there are none.

    ##### Examples #####

    ```python
    >>> from chatterplan.chattering import solve_constants
    >>> switching_function_check(solve_constants(), 1.0, 10)
    0.0

    ```
    """
    fractions = DEFAULT_GRID if grid is None else np.asarray(grid, float)
    b1, b2 = c.beta1, c.beta2
    levels = np.select(
        [fractions < b1, fractions < b2],
        [CYCLE_LEVELS[0], CYCLE_LEVELS[1]],
        CYCLE_LEVELS[2],
    )
    worst = 0.0
    checked = 0
    for i in range(1, n_cycles + 1):
        arc = costates(c, p0, i)
        p1 = arc.evaluate_local(fractions * arc.length)[0]
        mask = np.abs(p1) > SWITCHING_ATOL
        checked += int(mask.sum())
        if mask.any():
            worst = max(worst, float(np.max(levels[mask] * p1[mask])))
    log.debug("Checked switching function", points=checked, worst=worst)
    return worst
