"""
Jerk-limited sub-planner for the run-up to cruising velocity.

Works on the lower three states `(x1, x2, x3)` (jerk, acceleration,
velocity), from rest to the tangency `(x01, 0, M3)` with `x01 <= 0`, under
`|u| <= M0`, `|x1| <= M1` and `|x2| <= M2`. The profile has three parts:

1.  Raise the acceleration to a peak `a_p` and bring the jerk back to zero:
    a trapezoid in jerk when `a_p >= M1**2 / M0`, else a triangle.
2.  Hold `x2 = M2` for `hold` when even the full peak falls short of `M3`.
3.  Lower the acceleration to zero, ending with jerk `x01`: `u = -M0` down
    to a jerk of `-j_m` (holding `-M1` if `j_m` would exceed it), then
    `u = +M0` back up to `x01`.

`a_p` comes from matching the final velocity to `M3`.
"""

from __future__ import annotations
import dataclasses
import math

import numpy as np
from scipy import optimize

import splatlog

from chatterplan.core import PiecewiseControl
from chatterplan.dynamics import propagate
from chatterplan.errors import ParamOutOfRange, SubPlannerFailure

__all__ = ["RunUpPlan", "run_up_control", "plan_run_up"]

log = splatlog.get_logger(__name__)

# Durations this far below zero, relative to the longest piece, are rounding.
SNAP_RTOL = 1e-12


@dataclasses.dataclass(frozen=True)
class RunUpPlan:
    """
    `displacement` is how far `x4` moves over the run-up, starting from rest.
    """

    x01: float
    a_peak: float
    hold: float
    control: PiecewiseControl
    displacement: float

    @property
    def duration(self) -> float:
        return self.control.duration


def _raise(a_p: float, m0: float, m1: float) -> list[tuple[float, float]]:
    if a_p >= m1**2 / m0:
        ramp = m1 / m0
        return [(ramp, m0), ((a_p - m1**2 / m0) / m1, 0.0), (ramp, -m0)]
    ramp = math.sqrt(a_p / m0)
    return [(ramp, m0), (ramp, -m0)]


def _lower(
    a_p: float, x01: float, m0: float, m1: float
) -> list[tuple[float, float]]:
    depth = abs(x01)
    j_m = math.sqrt(max(0.0, (2.0 * m0 * a_p + x01**2) / 2.0))
    if j_m <= m1:
        return [(j_m / m0, -m0), ((j_m - depth) / m0, m0)]
    hold = (a_p - (2.0 * m1**2 - x01**2) / (2.0 * m0)) / m1
    return [(m1 / m0, -m0), (hold, 0.0), ((m1 - depth) / m0, m0)]


def _snap(pieces: list[tuple[float, float]]) -> list[tuple[float, float]]:
    floor = SNAP_RTOL * max(1.0, max(abs(d) for d, _ in pieces))
    return [(0.0 if -floor <= d < 0.0 else d, level) for d, level in pieces]


def run_up_control(
    x01: float, a_p: float, hold: float, m0: float, m1: float
) -> PiecewiseControl:
    """
    Pieces that come out negative by rounding alone are dropped.

    ##### Examples #####

    ```python
    >>> pc = run_up_control(0.0, 1.5, 0.0, 1.0, 1.0)
    >>> pc.durations()
    array([1. , 0.5, 1. , 1. , 0.5, 1. ])
    >>> propagate([0.0, 0.0, 0.0], pc)
    array([0.  , 0.  , 3.75])

    ```

    At the lowest peak the last piece is zero up to rounding, whichever way
    the rounding goes:

    ```python
    >>> def lowest(x01, m0):
    ...     return run_up_control(x01, x01**2 / (2.0 * m0), 0.0, m0, 1.0)
    >>> all(
    ...     bool(np.all(lowest(x01, m0).durations() > 0.0))
    ...     for m0 in (0.7, 0.8, 0.85, 1.0)
    ...     for x01 in np.linspace(-1.0, -0.05, 20)
    ... )
    True

    ```
    """
    return PiecewiseControl.of(
        _snap([*_raise(a_p, m0, m1), (hold, 0.0), *_lower(a_p, x01, m0, m1)])
    )


def _end_velocity(x01, a_p, hold, m0, m1) -> float:
    return float(
        propagate([0.0, 0.0, 0.0], run_up_control(x01, a_p, hold, m0, m1))[2]
    )


def plan_run_up(
    x01: float, m0: float, m1: float, m2: float, m3: float
) -> RunUpPlan:
    """
    ##### Examples #####

    Straight to cruise with no jerk left over. Both acceleration ramps hit
    the jerk limit, and a short hold at `M2` makes up the rest:

    ```python
    >>> plan = plan_run_up(0.0, 1.0, 1.0, 1.5, 4.0)
    >>> plan.a_peak, abs(plan.hold - 1.0 / 6.0) < 1e-12
    (1.5, True)
    >>> abs(plan.duration - 31.0 / 6.0) < 1e-12
    True
    >>> abs(plan.displacement - 31.0 / 3.0) < 1e-9
    True

    ```

    A lower cruising velocity peaks below `M2`:

    ```python
    >>> plan = plan_run_up(-0.5, 1.0, 1.0, 1.5, 2.0)
    >>> plan.hold, plan.a_peak < 1.5
    (0.0, True)
    >>> end = propagate([0.0, 0.0, 0.0], plan.control)
    >>> np.allclose(end, [-0.5, 0.0, 2.0], rtol=0.0, atol=1e-9)
    True

    >>> plan_run_up(-2.0, 1.0, 1.0, 1.5, 4.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: x01 must be in [-M1, 0], given -2.0

    ```
    """
    if not -m1 <= x01 <= 0.0:
        raise ParamOutOfRange(
            f"x01 must be in [-M1, 0], given {x01!r}", x01=x01, m1=m1
        )
    a_lo = x01**2 / (2.0 * m0)
    if a_lo > m2:
        raise SubPlannerFailure(
            "acceleration limit too low to end with jerk x01",
            x01=x01,
            m2=m2,
        )

    def shortfall(a_p: float) -> float:
        return _end_velocity(x01, a_p, 0.0, m0, m1) - m3

    if shortfall(a_lo) > 0.0:
        raise SubPlannerFailure(
            "cruising velocity is passed before the jerk reaches x01",
            x01=x01,
            m3=m3,
        )
    top = shortfall(m2)
    if top >= 0.0:
        a_p = optimize.brentq(shortfall, a_lo, m2, xtol=1e-14)
        hold = 0.0
    else:
        a_p = m2
        hold = -top / m2

    control = run_up_control(x01, a_p, hold, m0, m1)
    end = propagate([0.0, 0.0, 0.0, 0.0], control)
    if not np.allclose(end[:3], [x01, 0.0, m3], rtol=0.0, atol=1e-9):
        raise SubPlannerFailure(
            "run-up missed its tangency", end=end[:3].tolist()
        )
    plan = RunUpPlan(
        x01=x01,
        a_peak=a_p,
        hold=hold,
        control=control,
        displacement=float(end[3]),
    )
    log.debug(
        "Planned run-up",
        x01=x01,
        a_peak=a_p,
        hold=hold,
        duration=plan.duration,
    )
    return plan
