"""
The greedy baseline for the velocity-limited sub-problem: drive to
`(0, 0, M3)` as fast as possible with a single cycle, then cruise. In scaled
terms it is the `alpha = 0` member of the chattering family.
"""

from __future__ import annotations
import dataclasses
from typing import Optional

import splatlog

from chatterplan.chattering import cycle_control, family_point, solve_constants
from chatterplan.core import ChatteringConstants

from .problem7 import (
    Problem7Plan,
    Problem7Spec,
    assemble_plan,
    check_displacement,
)

__all__ = ["MimComparison", "solve_problem7_mim", "compare_mim"]

log = splatlog.get_logger(__name__)


@dataclasses.dataclass(frozen=True)
class MimComparison:
    """
    `first_junction_lag` is how far the greedy cycle overruns the first
    chattering cycle, `t_inf_mim - t_1`. `cruise_entry_lead` is how much
    sooner the greedy plan starts cruising, `t_inf_opt - t_inf_mim`.
    """

    t_inf_opt: float
    t_inf_mim: float
    t_f_opt: float
    t_f_mim: float
    gap: float
    first_junction_lag: float
    cruise_entry_lead: float


def solve_problem7_mim(spec: Problem7Spec, dt: float = 0.01) -> Problem7Plan:
    """
    ##### Examples #####

    ```python
    >>> spec = Problem7Spec(m0=1.0, m3=1.0, x01=-1.0, x04=0.0, xf4=10.0)
    >>> plan = solve_problem7_mim(spec)
    >>> abs(plan.t_inf - 4.3903) < 1e-3
    True
    >>> abs(plan.t_f - 11.3467626) < 1e-6
    True
    >>> float(abs(plan.trajectory.final_state[0])) < 1e-9
    True
    >>> abs(plan.trajectory.final_state[3] - 10.0) < 1e-9
    True

    ```
    """
    greedy = family_point(0.0)
    check_displacement(spec, greedy.j, greedy.tau1)
    cycle = cycle_control(greedy.beta1, greedy.beta2, greedy.tau1)
    plan = assemble_plan(
        spec,
        "mim",
        cycle,
        greedy.tau1,
        [greedy.tau1],
        [len(cycle)],
        greedy.j,
        dt,
    )
    log.info("Solved greedy plan", t_inf=plan.t_inf, t_f=plan.t_f)
    return plan


def compare_mim(
    spec: Problem7Spec, c: Optional[ChatteringConstants] = None
) -> MimComparison:
    """
    Closed-form comparison of the optimal and greedy plans; nothing gets
    sampled.

    ##### Examples #####

    ```python
    >>> spec = Problem7Spec(m0=1.0, m3=1.0, x01=-1.0, x04=0.0, xf4=10.0)
    >>> cmp = compare_mim(spec)
    >>> abs(cmp.gap - 1.5424e-3) < 1e-6
    True
    >>> abs(cmp.first_junction_lag - 0.1424) < 1e-3
    True
    >>> abs(cmp.cruise_entry_lead - 0.7035) < 1e-3
    True

    ```

    Times scale with `|x01| / M0` and the gap with `x01**4 / (M0**3 M3)`:

    ```python
    >>> big = compare_mim(
    ...     Problem7Spec(m0=2.0, m3=0.5, x01=-3.0, x04=0.0, xf4=1000.0)
    ... )
    >>> abs(big.gap - cmp.gap * 3.0**4 / (2.0**3 * 0.5)) < 1e-9
    True
    >>> abs(big.t_inf_mim - cmp.t_inf_mim * 1.5) < 1e-9
    True

    ```
    """
    c = solve_constants() if c is None else c
    greedy = family_point(0.0)
    check_displacement(spec, c.j_star, c.tau_inf)
    check_displacement(spec, greedy.j, greedy.tau1)

    s = spec.time_scale
    t_f_opt = spec.terminal_time(c.j_star)
    t_f_mim = spec.terminal_time(greedy.j)
    comparison = MimComparison(
        t_inf_opt=s * c.tau_inf,
        t_inf_mim=s * greedy.tau1,
        t_f_opt=t_f_opt,
        t_f_mim=t_f_mim,
        gap=t_f_mim - t_f_opt,
        first_junction_lag=s * (greedy.tau1 - c.tau1),
        cruise_entry_lead=s * (c.tau_inf - greedy.tau1),
    )
    log.debug("Compared against greedy plan", **dataclasses.asdict(comparison))
    return comparison
