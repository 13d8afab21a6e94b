"""
The velocity-limited sub-problem in physical units.

Starting from `x0 = (x01, 0, M3, x04)` with `x01 < 0`, the fastest way to reach
`x4 = xf4` at cruising velocity is the scaled chattering solution, stretched
by the time scale `s = -x01 / M0`. After `t_inf` the plan cruises at `x3 = M3`
until the displacement is covered.

The junction `t_i` of cycle `i` sits at `s * tau_i` and the state there is
known in closed form, see `junction_states`.
"""

from __future__ import annotations
import dataclasses
from typing import Optional, Sequence

import numpy as np

import splatlog

from chatterplan.chattering import build_chattering_schedule, solve_constants
from chatterplan.core import Bounds, ChatteringConstants, PiecewiseControl
from chatterplan.dynamics import Trajectory, sample
from chatterplan.errors import (
    DisplacementTooSmall,
    InfiniteControlBound,
    NonPositiveBound,
    ParamOutOfRange,
)
from chatterplan.typings import FloatArray, is_positive_finite

__all__ = [
    "Problem7Spec",
    "Problem7Plan",
    "check_displacement",
    "assemble_plan",
    "solve_problem7",
    "junction_states",
    "convergence_rates",
    "switches_per_cycle",
]

log = splatlog.get_logger(__name__)


@dataclasses.dataclass(frozen=True)
class Problem7Spec:
    """
    ##### Examples #####

    ```python
    >>> spec = Problem7Spec(m0=2.0, m3=1.0, x01=-1.0, x04=0.0, xf4=10.0)
    >>> spec.time_scale
    0.5
    >>> spec.state_factors()
    array([-1.  , -0.5 , -0.25, -0.125])

    >>> Problem7Spec(m0=1.0, m3=1.0, x01=0.5, x04=0.0, xf4=10.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: x01 must be negative, given 0.5

    >>> Problem7Spec(m0=float("inf"), m3=1.0, x01=-1.0, x04=0.0, xf4=1.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.InfiniteControlBound: m0 must be finite, given inf

    ```
    """

    m0: float
    m3: float
    x01: float
    x04: float
    xf4: float

    def __post_init__(self) -> None:
        if self.m0 == float("inf"):
            raise InfiniteControlBound(
                f"m0 must be finite, given {self.m0!r}", m0=self.m0
            )
        for name in ("m0", "m3"):
            value = getattr(self, name)
            if not is_positive_finite(value):
                raise NonPositiveBound(
                    f"{name} must be positive and finite, given {value!r}",
                    **{name: value},
                )
        if not self.x01 < 0:
            raise ParamOutOfRange(
                f"x01 must be negative, given {self.x01!r}", x01=self.x01
            )

    @property
    def time_scale(self) -> float:
        return -self.x01 / self.m0

    @property
    def x0(self) -> FloatArray:
        return np.array([self.x01, 0.0, self.m3, self.x04])

    @property
    def displacement(self) -> float:
        return self.xf4 - self.x04

    @property
    def bounds(self) -> Bounds:
        return Bounds.of(self.m0, None, None, self.m3, None)

    def state_factors(self) -> FloatArray:
        """
        `x_k - x_k(t_inf)` is this times `y_k` for `k = 1 .. 3`; the last
        entry multiplies the running integral of `y3` in `x4`.
        """
        return self.x01 * self.time_scale ** np.arange(4)

    def min_displacement(self, j: float, tau_inf: float) -> float:
        """Smallest `xf4 - x04` for which the cruise is not negative."""
        return -(self.x01 / self.m0) * (
            (self.x01**3 / self.m0**2) * j + self.m3 * tau_inf
        )

    def terminal_time(self, j: float) -> float:
        return self.displacement / self.m3 + self.x01**4 * j / (
            self.m0**3 * self.m3
        )


@dataclasses.dataclass(frozen=True)
class Problem7Plan:
    """
    `scaled_control` is the chattering (or single greedy cycle) in scaled
    time. `control` is the physical schedule, cruise included. `j` is the
    scaled cost the plan was built from. `junction_segments[i]` is the
    index in `control.segments` where cycle `i + 1` ends.
    """

    spec: Problem7Spec
    method: str
    scaled_control: PiecewiseControl
    control: PiecewiseControl
    t_inf: float
    t_f: float
    junction_times: FloatArray
    junction_segments: tuple[int, ...]
    j: float
    trajectory: Trajectory

    @property
    def cruise_time(self) -> float:
        return self.t_f - self.t_inf

    def to_json_encodable(self) -> dict:
        return {
            "method": self.method,
            "t_inf": self.t_inf,
            "t_f": self.t_f,
            "junction_times": self.junction_times.tolist(),
            "schedule": [s.to_json_encodable() for s in self.control],
        }


def check_displacement(spec: Problem7Spec, j: float, tau_inf: float) -> None:
    floor = spec.min_displacement(j, tau_inf)
    if spec.displacement < floor - 1e-12 * max(1.0, abs(floor)):
        raise DisplacementTooSmall(
            f"displacement {spec.displacement!r} is below the minimum "
            f"{floor!r}",
            displacement=spec.displacement,
            minimum=floor,
        )


def assemble_plan(
    spec: Problem7Spec,
    method: str,
    scaled_control: PiecewiseControl,
    tau_inf: float,
    junction_taus: Sequence[float],
    junction_segments: Sequence[int],
    j: float,
    dt: float,
) -> Problem7Plan:
    """Stretch a scaled schedule to physical time and append the cruise."""
    s = spec.time_scale
    chatter = scaled_control.scaled(time=s, level=-spec.m0)
    t_f = spec.terminal_time(j)
    control = chatter.then(
        PiecewiseControl.of([(max(0.0, t_f - chatter.duration), 0.0)])
    )
    return Problem7Plan(
        spec=spec,
        method=method,
        scaled_control=scaled_control,
        control=control,
        t_inf=s * tau_inf,
        t_f=t_f,
        junction_times=s * np.asarray(junction_taus, dtype=np.float64),
        junction_segments=tuple(int(k) for k in junction_segments),
        j=j,
        trajectory=sample(spec.x0, control, dt, cost=t_f),
    )


def solve_problem7(
    spec: Problem7Spec,
    c: Optional[ChatteringConstants] = None,
    n_cycles: int = 40,
    dt: float = 0.01,
) -> Problem7Plan:
    """
    ##### Examples #####

    ```python
    >>> spec = Problem7Spec(m0=1.0, m3=1.0, x01=-1.0, x04=0.0, xf4=10.0)
    >>> plan = solve_problem7(spec)
    >>> abs(plan.t_inf - 5.0938372) < 1e-6
    True
    >>> abs(plan.t_f - 11.3452202) < 1e-6
    True
    >>> abs(plan.trajectory.final_state[3] - 10.0) < 1e-9
    True

    >>> from chatterplan.dynamics import audit
    >>> audit(plan.trajectory, spec.bounds).max_violation <= 1e-9
    True

    >>> solve_problem7(
    ...     Problem7Spec(m0=1.0, m3=1.0, x01=-1.0, x04=0.0, xf4=0.0)
    ... )
    Traceback (most recent call last):
      ...
    chatterplan.errors.DisplacementTooSmall: displacement 0.0 is below the
        minimum 3.748...

    ```
    """
    c = solve_constants() if c is None else c
    check_displacement(spec, c.j_star, c.tau_inf)
    scaled = build_chattering_schedule(c, n_cycles)
    cycles = len(scaled) // 3
    plan = assemble_plan(
        spec,
        "optimal",
        scaled,
        c.tau_inf,
        [c.junction_time(i) for i in range(1, cycles + 1)],
        [3 * i for i in range(1, cycles + 1)],
        c.j_star,
        dt,
    )
    log.info(
        "Solved velocity-limited plan",
        t_inf=plan.t_inf,
        t_f=plan.t_f,
        cycles=cycles,
    )
    return plan


def junction_states(
    spec: Problem7Spec, c: ChatteringConstants, n: int
) -> list[tuple[float, FloatArray]]:
    """
    `(t_i, x(t_i))` for `i = 0 .. n`, in closed form:

        x(t_i) = (alpha**i x01, 0, M3, x4(t_i))
        x4(t_i) = x04 + M3 t_inf (1 - alpha**i)
                  - (x01**4 J* / M0**3) (1 - alpha**(4 i))

    ##### Examples #####

    ```python
    >>> from chatterplan.dynamics import boundary_states
    >>> c = solve_constants()
    >>> spec = Problem7Spec(m0=1.0, m3=1.0, x01=-1.0, x04=0.0, xf4=10.0)

    >>> t1, x1 = junction_states(spec, c, 1)[1]
    >>> abs(x1[0] + 0.1660687) < 1e-7
    True

    >>> plan = solve_problem7(spec, c, n_cycles=10)
    >>> propagated = boundary_states(spec.x0, plan.control)[0:31:3]
    >>> exact = np.array([x for _, x in junction_states(spec, c, 10)])
    >>> float(np.max(np.abs(propagated - exact))) < 1e-10
    True

    ```
    """
    s = spec.time_scale
    t_inf = s * c.tau_inf
    tail = spec.x01**4 * c.j_star / spec.m0**3
    out = []
    for i in range(n + 1):
        shrink = c.alpha**i
        out.append(
            (
                s * c.junction_time(i),
                np.array(
                    [
                        shrink * spec.x01,
                        0.0,
                        spec.m3,
                        spec.x04
                        + spec.m3 * t_inf * (1.0 - shrink)
                        - tail * (1.0 - shrink**4),
                    ]
                ),
            )
        )
    return out


def convergence_rates(
    traj: Trajectory,
    t_inf: float,
    x_inf: Sequence[float],
    edges: Optional[Sequence[float]] = None,
) -> FloatArray:
    """
    `max |x_k - x_k(t_inf)| / (t_inf - t)**k` over the samples before `t_inf`,
    per window of `edges` (one row each) and component (one column each).
    Without `edges` the whole trajectory is a single window.

    ##### Examples #####

    Over the first six cycles, densely sampled, the ratios hold steady from
    cycle to cycle:

    ```python
    >>> spec = Problem7Spec(m0=1.0, m3=1.0, x01=-1.0, x04=0.0, xf4=10.0)
    >>> plan = solve_problem7(spec, n_cycles=6)
    >>> chatter = plan.control.truncated(plan.junction_times[-1])
    >>> traj = sample(spec.x0, chatter, 1e-5)
    >>> x_inf = np.array([0.0, 0.0, spec.m3, 0.0])
    >>> rates = convergence_rates(
    ...     traj, plan.t_inf, x_inf, [0.0, *plan.junction_times]
    ... )[:, :3]
    >>> rates.shape
    (6, 3)
    >>> bool(np.all(rates.max(axis=0) < 2.0 * rates.min(axis=0)))
    True

    ```
    """
    x_inf = np.asarray(x_inf, dtype=np.float64)
    remaining = t_inf - traj.times
    powers = np.arange(1, traj.order + 1)
    if edges is None:
        edges = [traj.control.t0, t_inf]
    rows = []
    for lo, hi in zip(edges, edges[1:]):
        mask = (remaining > 0) & (traj.times >= lo) & (traj.times <= hi)
        if not np.any(mask):
            rows.append(np.full(traj.order, np.nan))
            continue
        deviation = np.abs(traj.states[mask] - x_inf)
        rows.append(
            np.max(deviation / remaining[mask, None] ** powers, axis=0)
        )
    return np.array(rows)


def switches_per_cycle(
    control: PiecewiseControl, junction_segments: Sequence[int]
) -> list[int]:
    """
    Level changes per cycle. Cycle `i` owns the segment boundaries after
    `junction_segments[i - 1]` up to and including `junction_segments[i]`,
    so a switch at a junction counts once, in the cycle it ends.

    Works on segment indices rather than times: late cycles are only a few
    ulps of `t_inf` long.

    ##### Examples #####

    ```python
    >>> spec = Problem7Spec(m0=1.0, m3=1.0, x01=-1.0, x04=0.0, xf4=10.0)
    >>> plan = solve_problem7(spec, n_cycles=5)
    >>> plan.junction_segments
    (3, 6, 9, 12, 15)
    >>> switches_per_cycle(plan.control, plan.junction_segments)
    [2, 2, 2, 2, 3]

    >>> full = solve_problem7(spec)
    >>> counts = switches_per_cycle(full.control, full.junction_segments)
    >>> len(counts), max(counts)
    (20, 3)

    ```
    """
    segments = control.segments
    # Boundary `k` sits between segments `k - 1` and `k`.
    switches = [
        k
        for k in range(1, len(segments))
        if segments[k - 1].level != segments[k].level
    ]
    edges = [0, *junction_segments]
    return [
        sum(1 for k in switches if lo < k <= hi)
        for lo, hi in zip(edges, edges[1:])
    ]
