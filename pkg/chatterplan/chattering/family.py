"""
The one-parameter family of self-similar schedules.

Fix the attenuation rate `alpha` and drop the costate conditions: the landing
conditions alone pin down `beta1`, `beta2` and `tau1`. The cost of the whole
infinite schedule is then `J1 / (1 - alpha**4)`, where `J1` is the cost of the
first cycle. The optimal constants are the member of least cost, and
`alpha = 0` is the "get there as fast as possible" member that planners
compare against.
"""

from __future__ import annotations
import csv
import dataclasses
from typing import IO, Iterable, Optional

import numpy as np
from scipy import optimize

import splatlog

from chatterplan.core import Bounds, ChatteringConstants
from chatterplan.dynamics import audit, sample
from chatterplan.errors import (
    Infeasible,
    NoConvergence,
    NotInFeasibleBox,
    ParamOutOfRange,
)

from .constants import check_tol, s_k
from .cycles import E1, cycle_control, cycle_cost

__all__ = [
    "FAMILY_SEED",
    "Y3_ATOL",
    "AlphaFamilyPoint",
    "family_residuals",
    "family_point",
    "sweep",
    "SWEEP_HEADER",
    "write_sweep_csv",
    "one_cycle_cost",
    "total_cost",
]

log = splatlog.get_logger(__name__)

FAMILY_SEED = (0.47, 0.87)

# How far below zero `y3` may dip before a cycle counts as infeasible.
Y3_ATOL = 1e-9

_Y3_ONLY = Bounds.of(1, None, None, None)


@dataclasses.dataclass(frozen=True)
class AlphaFamilyPoint:
    alpha: float
    tau1: float
    beta1: float
    beta2: float
    j1: float
    j: float

    def csv_row(self) -> list[str]:
        return [
            repr(float(v))
            for v in (
                self.alpha,
                self.tau1,
                self.beta1,
                self.beta2,
                self.j1,
                self.j,
            )
        ]


def family_residuals(v, alpha: float):
    beta1, beta2 = v
    s1, s2, s3 = (s_k(beta1, beta2, k) for k in (1, 2, 3))
    return np.array([3.0 * s2 - 2.0 * s3, 2.0 * s1 - (1.0 - alpha) * s2])


def family_point(
    alpha: float,
    tol: float = 1e-12,
    seed: Optional[tuple[float, float]] = None,
) -> AlphaFamilyPoint:
    """
    The family member with attenuation rate `alpha`, first control `-1`.

    ##### Examples #####

    ```python
    >>> from chatterplan.chattering import solve_constants
    >>> c = solve_constants()

    >>> best = family_point(c.alpha)
    >>> abs(best.j - 1.3452202) < 1e-6
    True

    >>> greedy = family_point(0.0)
    >>> abs(greedy.j - 1.3467626) < 1e-6
    True
    >>> abs(greedy.tau1 - 4.3903) < 1e-3
    True
    >>> abs((greedy.j - best.j) / best.j - 0.0011) < 5e-5
    True

    >>> family_point(1.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: alpha must be in [0, 1), given 1.0

    ```
    """
    check_tol(tol)
    if not 0.0 <= alpha < 1.0:
        raise ParamOutOfRange(
            f"alpha must be in [0, 1), given {alpha!r}", alpha=alpha
        )
    result = optimize.root(
        family_residuals,
        FAMILY_SEED if seed is None else seed,
        args=(alpha,),
        method="hybr",
        options={"xtol": 1e-15},
    )
    beta1, beta2 = (float(v) for v in result.x)
    residual = float(np.max(np.abs(family_residuals(result.x, alpha))))
    if not residual <= tol:
        raise NoConvergence(
            f"family member at alpha = {alpha!r} did not converge",
            alpha=alpha,
            residual=residual,
        )
    if not 0.0 < beta1 < beta2 < 1.0:
        raise NotInFeasibleBox(
            "family member violates 0 < beta1 < beta2 < 1",
            alpha=alpha,
            beta1=beta1,
            beta2=beta2,
        )

    tau1 = 2.0 / s_k(beta1, beta2, 2)
    pc = cycle_control(beta1, beta2, tau1)
    lowest = audit(sample(E1, pc, pc.duration), _Y3_ONLY)[3].min_value
    if lowest < -Y3_ATOL:
        raise Infeasible(
            f"y3 dips to {lowest!r} within the cycle",
            alpha=alpha,
            y3=lowest,
        )

    j1 = cycle_cost(beta1, beta2, tau1)
    point = AlphaFamilyPoint(
        alpha=float(alpha),
        tau1=tau1,
        beta1=beta1,
        beta2=beta2,
        j1=j1,
        j=j1 / (1.0 - alpha**4),
    )
    log.debug("Family member", **dataclasses.asdict(point))
    return point


def sweep(
    alphas: Iterable[float], tol: float = 1e-12
) -> list[AlphaFamilyPoint]:
    """
    Evaluate the family along `alphas`, seeding each solve with the previous
    member's betas.

    ##### Examples #####

    ```python
    >>> points = sweep(np.linspace(0.0, 0.5, 51))
    >>> costs = [p.j for p in points]
    >>> best = points[int(np.argmin(costs))]
    >>> abs(best.alpha - 0.17) < 1e-9
    True

    ```
    """
    points = []
    seed = None
    for alpha in alphas:
        point = family_point(float(alpha), tol, seed)
        seed = (point.beta1, point.beta2)
        points.append(point)
    log.info("Swept family", points=len(points))
    return points


SWEEP_HEADER = ("alpha", "tau1", "beta1", "beta2", "j1", "j")


def write_sweep_csv(points: Iterable[AlphaFamilyPoint], fp: IO[str]) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for point in points:
        writer.writerow(point.csv_row())


def one_cycle_cost(c: ChatteringConstants) -> float:
    """Cost of the first cycle, recomputed from the constants."""
    return cycle_cost(c.beta1, c.beta2, c.tau1)


def total_cost(c: ChatteringConstants) -> float:
    """
    ##### Examples #####

    ```python
    >>> from chatterplan.chattering import solve_constants
    >>> c = solve_constants()
    >>> abs(total_cost(c) - c.j_star) < 1e-12
    True

    ```
    """
    return one_cycle_cost(c) / (1.0 - c.alpha**4)
