"""
Rest-to-rest planning for the fourth-order chain with a velocity limit.

The plan is antisymmetric about its midpoint:

1.  run up from rest to the tangency `(x01, 0, M3)` with the jerk-limited
    sub-planner,
2.  chatter into cruise, the velocity-limited solution scaled by `x01`,
3.  cruise at `x3 = M3`,
4.  mirror of 1 and 2.

Only `x01` is free. Every run-up-plus-chattering phase is compared against
just cruising over the same distance, and the phase that loses the least
time wins:

    loss(x01) = T_run_up - D_run_up / M3 + x01**4 J* / (M0**3 M3)

where the last term is what the chattering costs. The total is then
`distance / M3 + 2 loss`. The greedy plan enters cruise directly, `x01 = 0`.
"""

from __future__ import annotations
import dataclasses
from functools import lru_cache
import math
from typing import Any, Optional

import numpy as np
from scipy import optimize

import splatlog

from chatterplan.chattering import (
    E1,
    build_chattering_schedule,
    build_cycle_control,
    solve_constants,
)
from chatterplan.core import Bounds, ChatteringConstants, PiecewiseControl
from chatterplan.dynamics import Trajectory, audit, sample, states_at
from chatterplan.errors import (
    CruiseImpossible,
    NoConvergence,
    OrderMismatch,
    ParamOutOfRange,
)
from chatterplan.typings import FloatArray

from .s_curve import RunUpPlan, plan_run_up

__all__ = [
    "RestToRestSpec",
    "EntryChoice",
    "RestToRestReport",
    "RestToRestPlan",
    "chattering_peak",
    "choose_entry",
    "plan_rest_to_rest",
]

log = splatlog.get_logger(__name__)

# Lower end of the `x01` bracket, relative to `M1`.
ENTRY_EPSILON = 1e-6


@dataclasses.dataclass(frozen=True)
class RestToRestSpec:
    """
    From rest at `x4 = start` to rest at `x4 = end`. Build with `of`, which
    defaults the ends to `-M4` and `+M4`.

    ##### Examples #####

    ```python
    >>> spec = RestToRestSpec.of([1, 1, 1.5, 4, 15])
    >>> spec.start, spec.end, spec.distance
    (-15.0, 15.0, 30.0)

    >>> RestToRestSpec.of([1, 1, 1.5, 4, None])
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: start and end are required when M4 is
        unbounded

    >>> RestToRestSpec.of([1, 1, 1.5, 4])
    Traceback (most recent call last):
      ...
    chatterplan.errors.OrderMismatch: expected bounds of order 4, given 3

    ```
    """

    bounds: Bounds
    start: float
    end: float

    @classmethod
    def of(
        cls,
        bounds: Any,
        start: Optional[float] = None,
        end: Optional[float] = None,
    ) -> RestToRestSpec:
        b = Bounds.cast(bounds)
        if b.order != 4:
            raise OrderMismatch(
                f"expected bounds of order 4, given {b.order}",
                order=4,
                given=b.order,
            )
        m4 = b.limit(4)
        if math.isinf(m4) and (start is None or end is None):
            raise ParamOutOfRange(
                "start and end are required when M4 is unbounded"
            )
        return cls(
            bounds=b,
            start=-m4 if start is None else float(start),
            end=m4 if end is None else float(end),
        )

    def __post_init__(self) -> None:
        for k in (1, 2, 3):
            if math.isinf(self.bounds.limit(k)):
                raise ParamOutOfRange(
                    f"M{k} must be finite for rest-to-rest planning",
                    k=k,
                )
        if not self.end > self.start:
            raise ParamOutOfRange(
                f"end must be past start, given {self.start!r} -> "
                f"{self.end!r}",
                start=self.start,
                end=self.end,
            )

    @property
    def distance(self) -> float:
        return self.end - self.start

    @property
    def x0(self) -> FloatArray:
        return np.array([0.0, 0.0, 0.0, self.start])

    @property
    def xf(self) -> FloatArray:
        return np.array([0.0, 0.0, 0.0, self.end])


@dataclasses.dataclass(frozen=True)
class EntryChoice:
    """The chosen `x01` with both run-ups and both terminal times."""

    x01: float
    run_up: RunUpPlan
    greedy_run_up: RunUpPlan
    t_inf: float
    t_f_opt: float
    t_f_mim: float

    @property
    def gap(self) -> float:
        return self.t_f_mim - self.t_f_opt


@dataclasses.dataclass(frozen=True)
class RestToRestReport:
    t_f_opt: float
    t_f_mim: float
    gap: float
    relative_gap: float
    x01: float
    a_peak: float
    run_up_time: float
    chattering_time: float
    cruise_time: float
    max_violation: float
    terminal_error: float


@dataclasses.dataclass(frozen=True)
class RestToRestPlan:
    spec: RestToRestSpec
    control: PiecewiseControl
    trajectory: Trajectory
    report: RestToRestReport

    def antisymmetry_deviation(self, times: FloatArray) -> float:
        """
        Largest deviation from `x(T - t) = (x1, -x2, x3, end + start - x4)`
        at the given `times`.
        """
        times = np.asarray(times, dtype=np.float64)
        T = self.control.t_end
        forward = states_at(self.spec.x0, self.control, times)
        backward = states_at(self.spec.x0, self.control, T - times)
        mirrored = backward * [1.0, -1.0, 1.0, -1.0] + [
            0.0,
            0.0,
            0.0,
            self.spec.start + self.spec.end,
        ]
        return float(np.max(np.abs(forward - mirrored)))

    def to_json_encodable(self) -> dict:
        return {
            **dataclasses.asdict(self.report),
            "schedule": [s.to_json_encodable() for s in self.control],
        }


@lru_cache(maxsize=4)
def chattering_peak(c: ChatteringConstants) -> float:
    """Largest `|y2|` along the chattering from `e1`; cycle 1 holds it."""
    pc = build_cycle_control(c, 1)
    report = audit(sample(E1, pc, pc.duration), Bounds.of(1, None, None, None))
    return max(abs(report[2].min_value), abs(report[2].max_value))


def _loss(run: RunUpPlan, m0: float, m3: float, j: float) -> float:
    return run.duration - run.displacement / m3 + run.x01**4 * j / (
        m0**3 * m3
    )


def choose_entry(
    spec: RestToRestSpec,
    tol: float = 1e-10,
    c: Optional[ChatteringConstants] = None,
) -> EntryChoice:
    """
    Minimize the time loss over `x01` in `[-x_cap, -eps]`. `x_cap` keeps
    `|x1| <= M1` and, through the chattering's `y2` peak, `|x2| <= M2`.

    ##### Examples #####

    ```python
    >>> choice = choose_entry(RestToRestSpec.of([1, 1, 1.5, 4, 15]))
    >>> abs(choice.t_f_mim - 38.0 / 3.0) < 1e-9
    True
    >>> abs(choice.t_f_opt - 12.6645) < 5e-3
    True
    >>> 0.0 < choice.gap < 5e-3
    True

    ```
    """
    c = solve_constants() if c is None else c
    b = spec.bounds
    m0, m1, m2, m3 = (b.limit(k) for k in range(4))

    x_cap = min(m1, math.sqrt(m0 * m2 / chattering_peak(c)))
    lower, upper = -x_cap, -ENTRY_EPSILON * m1

    def loss(x01: float) -> float:
        return _loss(plan_run_up(x01, m0, m1, m2, m3), m0, m3, c.j_star)

    result = optimize.minimize_scalar(
        loss, bounds=(lower, upper), method="bounded", options={"xatol": tol}
    )
    if not result.success:
        raise NoConvergence(
            f"entry minimization failed: {result.message}",
            bounds=(lower, upper),
        )
    x01 = float(result.x)
    run_up = plan_run_up(x01, m0, m1, m2, m3)
    greedy = plan_run_up(0.0, m0, m1, m2, m3)
    t_inf = -x01 / m0 * c.tau_inf

    reach = run_up.displacement + m3 * t_inf - x01**4 * c.j_star / m0**3
    for name, needed in (
        ("optimal", 2.0 * reach),
        ("greedy", 2.0 * greedy.displacement),
    ):
        if spec.distance < needed:
            raise CruiseImpossible(
                f"distance {spec.distance!r} is too short to reach cruise on "
                f"the {name} plan, which needs {needed!r}",
                distance=spec.distance,
                needed=needed,
            )

    choice = EntryChoice(
        x01=x01,
        run_up=run_up,
        greedy_run_up=greedy,
        t_inf=t_inf,
        t_f_opt=spec.distance / m3 + 2.0 * _loss(run_up, m0, m3, c.j_star),
        t_f_mim=spec.distance / m3 + 2.0 * _loss(greedy, m0, m3, c.j_star),
    )
    log.info(
        "Chose cruise entry",
        x01=x01,
        t_f_opt=choice.t_f_opt,
        t_f_mim=choice.t_f_mim,
        evaluations=result.nfev,
    )
    return choice


def plan_rest_to_rest(
    spec: RestToRestSpec,
    tol: float = 1e-10,
    n_cycles: int = 40,
    dt: float = 0.01,
    c: Optional[ChatteringConstants] = None,
) -> RestToRestPlan:
    """
    ##### Examples #####

    ```python
    >>> spec = RestToRestSpec.of([1, 1, 1.5, 4, 15])
    >>> plan = plan_rest_to_rest(spec)
    >>> report = plan.report
    >>> abs(report.t_f_opt - 12.6645) < 5e-3
    True
    >>> abs(report.t_f_mim - 12.6667) < 5e-3
    True
    >>> report.max_violation <= 1e-6, report.terminal_error <= 1e-6
    (True, True)
    >>> times = np.linspace(0.0, plan.control.t_end, 501)
    >>> plan.antisymmetry_deviation(times) <= 1e-9
    True

    ```

    Too short a move never reaches cruise:

    ```python
    >>> plan_rest_to_rest(RestToRestSpec.of([1, 1, 1.5, 4, 5]))
    Traceback (most recent call last):
      ...
    chatterplan.errors.CruiseImpossible: distance 10.0 is too short to reach
        cruise on the optimal plan, which needs ...

    ```
    """
    c = solve_constants() if c is None else c
    choice = choose_entry(spec, tol, c)
    m0 = spec.bounds.m0

    chatter = build_chattering_schedule(c, n_cycles).scaled(
        time=-choice.x01 / m0, level=-m0
    )
    run_up = choice.run_up.control.then(chatter)
    cruise = max(0.0, choice.t_f_opt - 2.0 * run_up.duration)
    control = run_up.then(PiecewiseControl.of([(cruise, 0.0)])).then(
        run_up.mirrored()
    )

    trajectory = sample(spec.x0, control, dt, cost=choice.t_f_opt)
    report = RestToRestReport(
        t_f_opt=choice.t_f_opt,
        t_f_mim=choice.t_f_mim,
        gap=choice.gap,
        relative_gap=choice.gap / choice.t_f_opt,
        x01=choice.x01,
        a_peak=choice.run_up.a_peak,
        run_up_time=choice.run_up.duration,
        chattering_time=choice.t_inf,
        cruise_time=cruise,
        max_violation=max(0.0, audit(trajectory, spec.bounds).max_violation),
        terminal_error=float(
            np.max(np.abs(trajectory.final_state - spec.xf))
        ),
    )
    log.info(
        "Planned rest-to-rest move",
        t_f=report.t_f_opt,
        gap=report.gap,
        max_violation=report.max_violation,
    )
    return RestToRestPlan(
        spec=spec, control=control, trajectory=trajectory, report=report
    )
