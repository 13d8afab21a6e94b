"""
Constraint audits.

Samples alone can miss a bump between two sample times, so the audit also
visits the extrema of each segment's closed-form polynomial (roots of its
derivative, found with `numpy`).
"""

from __future__ import annotations
import dataclasses
import math
from typing import Optional

import numpy as np

import splatlog

from chatterplan.core import Bounds
from chatterplan.errors import OrderMismatch

from .propagate import boundary_states, segment_polynomial
from .trajectory import Trajectory

__all__ = ["ComponentAudit", "AuditReport", "audit"]

log = splatlog.get_logger(__name__)


@dataclasses.dataclass(frozen=True)
class ComponentAudit:
    """
    Range of one component over a trajectory. `component == 0` is the
    control. `violation` is `max(|x_k|) - M_k` (positive means violated), or
    `None` when the component has no limit.
    """

    component: int
    limit: Optional[float]
    min_value: float
    max_value: float
    t_min: float
    t_max: float
    violation: Optional[float]
    t_violation: float


@dataclasses.dataclass(frozen=True)
class AuditReport:
    components: tuple[ComponentAudit, ...]

    def __getitem__(self, k: int) -> ComponentAudit:
        return self.components[k]

    @property
    def max_violation(self) -> float:
        return max(
            (c.violation for c in self.components if c.violation is not None),
            default=-math.inf,
        )

    def is_feasible(self, atol: float = 0.0) -> bool:
        return self.max_violation <= atol


class _Range:
    def __init__(self) -> None:
        self.lo, self.hi = math.inf, -math.inf
        self.t_lo = self.t_hi = math.nan

    def visit(self, t: float, value: float) -> None:
        t, value = float(t), float(value)
        if value < self.lo:
            self.lo, self.t_lo = value, t
        if value > self.hi:
            self.hi, self.t_hi = value, t


def _segment_extrema(poly, duration: float) -> list[float]:
    candidates = [0.0, duration]
    deriv = poly.deriv()
    if deriv.degree() >= 1 and np.any(deriv.coef != 0):
        for root in deriv.roots():
            if abs(root.imag) <= 1e-12 * max(1.0, abs(root.real)):
                s = root.real
                if 0.0 < s < duration:
                    candidates.append(float(s))
    return candidates


def audit(traj: Trajectory, bounds: Bounds) -> AuditReport:
    """
    ##### Examples #####

    ```python
    >>> from chatterplan.core import Bounds, PiecewiseControl
    >>> from chatterplan.dynamics import sample

    >>> traj = sample([0.0, 0.0, 0.0], PiecewiseControl.of([(2.0, 1.0)]), 1.0)
    >>> report = audit(traj, Bounds.of(1, 1, "inf", "inf"))
    >>> report[1].violation
    1.0
    >>> report[1].t_violation
    2.0
    >>> report[3].violation is None
    True
    >>> report.is_feasible()
    False

    ```

    A bump that lives strictly between samples still gets caught:

    ```python
    >>> pc = PiecewiseControl.of([(2.0, -1.0)])
    >>> coarse = sample([1.0, 0.0], pc, 2.0)
    >>> float(coarse.component(2).max())
    0.0
    >>> audit(coarse, Bounds.of(1, 1, 0.4)).max_violation > 0
    True

    ```
    """
    if bounds.order != traj.order:
        raise OrderMismatch(
            f"bounds of order {bounds.order} for a trajectory of order "
            f"{traj.order}",
            order=bounds.order,
            given=traj.order,
        )
    ranges = [_Range() for _ in range(traj.order + 1)]

    for t, u, x in zip(traj.times, traj.controls, traj.states):
        ranges[0].visit(t, u)
        for k in range(1, traj.order + 1):
            ranges[k].visit(t, x[k - 1])

    pc = traj.control
    edges = pc.boundaries()
    starts = boundary_states(traj.x0, pc)
    for i, segment in enumerate(pc):
        ranges[0].visit(edges[i], segment.level)
        for k in range(1, traj.order + 1):
            poly = segment_polynomial(starts[i], segment.level, k)
            for s in _segment_extrema(poly, segment.duration):
                ranges[k].visit(edges[i] + s, float(poly(s)))

    components = []
    for k, r in enumerate(ranges):
        limit = bounds.limit(k)
        if math.isinf(limit):
            violation, t_violation, limit_value = None, math.nan, None
        else:
            limit_value = limit
            if -r.lo >= r.hi:
                violation, t_violation = -r.lo - limit, r.t_lo
            else:
                violation, t_violation = r.hi - limit, r.t_hi
        components.append(
            ComponentAudit(
                component=k,
                limit=limit_value,
                min_value=r.lo,
                max_value=r.hi,
                t_min=r.t_lo,
                t_max=r.t_hi,
                violation=violation,
                t_violation=t_violation,
            )
        )

    report = AuditReport(tuple(components))
    log.debug("Audited trajectory", max_violation=report.max_violation)
    return report
