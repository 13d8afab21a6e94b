"""
Control schedules of the chattering solution in scaled coordinates.

Starting from `e1 = (1, 0, 0)` the scaled control runs `-1, +1, -1` on every
cycle, switching at fractions `beta1`, `beta2` of the cycle, and each cycle
is `alpha` times as long as the one before. A start of `a * e1` just
stretches every duration by `a`.
"""

from __future__ import annotations

import splatlog

from chatterplan.core import ChatteringConstants, PiecewiseControl
from chatterplan.dynamics import integral_cost
from chatterplan.errors import ParamOutOfRange

__all__ = [
    "TRUNCATION_RTOL",
    "CYCLE_LEVELS",
    "E1",
    "cycle_control",
    "cycle_cost",
    "build_cycle_control",
    "build_chattering_schedule",
]

log = splatlog.get_logger(__name__)

# Cycles shorter than this fraction of the first are past double precision.
TRUNCATION_RTOL = 1e-15

CYCLE_LEVELS = (-1.0, 1.0, -1.0)

E1 = (1.0, 0.0, 0.0)


def cycle_control(
    beta1: float, beta2: float, length: float, t0: float = 0.0
) -> PiecewiseControl:
    """
    ##### Examples #####

    ```python
    >>> cycle_control(0.25, 0.75, 2.0).segments
    (Segment(duration=0.5, level=-1.0),
        Segment(duration=1.0, level=1.0),
        Segment(duration=0.5, level=-1.0))

    ```
    """
    return PiecewiseControl.of(
        zip(
            (beta1 * length, (beta2 - beta1) * length, (1.0 - beta2) * length),
            CYCLE_LEVELS,
        ),
        t0=t0,
    )


def cycle_cost(beta1: float, beta2: float, tau1: float) -> float:
    """Integral of `y3` over one cycle started from `e1`."""
    return integral_cost(E1, cycle_control(beta1, beta2, tau1), 3)


def _check_scale(scale: float) -> None:
    if not scale > 0:
        raise ParamOutOfRange(
            f"scale must be positive, given {scale!r}", scale=scale
        )


def build_cycle_control(
    c: ChatteringConstants, i: int, scale: float = 1.0
) -> PiecewiseControl:
    """
    Cycle `i` (from 1), placed at its absolute start `tau_{i-1}`.

    ##### Examples #####

    ```python
    >>> from chatterplan.chattering import solve_constants
    >>> c = solve_constants()

    >>> pc = build_cycle_control(c, 2)
    >>> abs(pc.t0 - c.tau1) < 1e-12
    True
    >>> abs(pc.duration - 0.7054450) < 1e-6
    True
    >>> pc.levels()
    array([-1.,  1., -1.])

    >>> build_cycle_control(c, 0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: cycle index must be >= 1, given 0

    ```
    """
    if i < 1:
        raise ParamOutOfRange(f"cycle index must be >= 1, given {i}", i=i)
    _check_scale(scale)
    return cycle_control(
        c.beta1,
        c.beta2,
        scale * c.cycle_length(i),
        t0=scale * c.junction_time(i - 1),
    )


def build_chattering_schedule(
    c: ChatteringConstants, n_cycles: int = 40, scale: float = 1.0
) -> PiecewiseControl:
    """
    Cycles `1 .. n_cycles` back to back, for a start at `scale * e1`.

    Cycles shorter than `TRUNCATION_RTOL * tau1` are never built: the state
    there is within rounding of the origin and gets treated as having
    arrived. With the optimal constants that leaves about 20 cycles.

    ##### Examples #####

    ```python
    >>> from chatterplan.chattering import solve_constants
    >>> from chatterplan.dynamics import propagate
    >>> c = solve_constants()

    >>> pc = build_chattering_schedule(c, 5)
    >>> len(pc)
    15
    >>> y = propagate([1.0, 0.0, 0.0], pc)
    >>> abs(y[0] - c.alpha**5) < 1e-12, max(abs(y[1:])) < 1e-12
    (True, True)

    >>> len(build_chattering_schedule(c)) // 3
    20

    >>> build_chattering_schedule(c, 0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: n_cycles must be >= 1, given 0

    ```
    """
    if n_cycles < 1:
        raise ParamOutOfRange(
            f"n_cycles must be >= 1, given {n_cycles}", n_cycles=n_cycles
        )
    _check_scale(scale)

    segments = []
    built = 0
    for i in range(1, n_cycles + 1):
        if c.cycle_length(i) < TRUNCATION_RTOL * c.tau1:
            break
        segments.extend(build_cycle_control(c, i, scale).segments)
        built = i

    if built < n_cycles:
        log.info(
            "Chattering schedule stops at the precision floor",
            requested=n_cycles,
            built=built,
        )
    return PiecewiseControl(tuple(segments))
