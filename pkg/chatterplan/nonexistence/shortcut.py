"""
Third-order chains never chatter against the acceleration limit.

Two consecutive junctions sit on `x1 = 0, x2 = M2`. Any arc between them
keeps `x2 < M2` inside, so it takes longer than riding `x2 = M2` with zero
jerk, which covers the velocity gap in exactly `(x3_end - x3_start) / M2`.

`check_n3_shortcut` makes this concrete with arcs that leave one junction and
land on the other. For a depth `d` the arc drops `x2` to `M2 - d` at full
jerk (`-M0, +M0` for `T` each, `d = M0 T**2`), holds there for whatever
velocity is left, and climbs back (`+M0, -M0`). Shallow arcs come
arbitrarily close to the shortcut without reaching it.
"""

from __future__ import annotations
import dataclasses
import math
from typing import Optional, Sequence

import numpy as np

import splatlog

from chatterplan.core import PiecewiseControl
from chatterplan.dynamics import propagate
from chatterplan.errors import (
    InvalidJunctionPair,
    NonPositiveBound,
    SubPlannerFailure,
)
from chatterplan.typings import FloatArray, VectorLike, is_positive_finite

__all__ = ["ShortcutReport", "connecting_arc", "check_n3_shortcut"]

log = splatlog.get_logger(__name__)

# Default depths, as fractions of M2.
DEFAULT_DEPTH_FRACTIONS = (0.01, 0.05, 0.1, 0.2)

TANGENCY_ATOL = 1e-12


@dataclasses.dataclass(frozen=True)
class ShortcutReport:
    """
    `excursion_times[j]` is the time of the connecting arc of depth
    `depths[j]`, NaN when no arc of that depth connects the pair. `excess` is
    how much longer each one takes than the shortcut.

    The shortcut only counts as faster when at least one arc was timed.
    """

    shortcut_time: float
    depths: FloatArray
    excursion_times: FloatArray
    excess: FloatArray

    @property
    def compared(self) -> int:
        return int(np.count_nonzero(~np.isnan(self.excess)))

    @property
    def shortcut_is_faster(self) -> bool:
        done = ~np.isnan(self.excess)
        return bool(done.any() and np.all(self.excess[done] > 0.0))


def connecting_arc(
    depth: float, gap: float, m0: float, m2: float
) -> Optional[PiecewiseControl]:
    """
    The arc of the given depth that covers a velocity gap `gap` between two
    junctions on `x2 = M2`, or `None` when there is no such arc: the depth
    reaches zero acceleration, or the drop and climb alone cover more than
    `gap`.

    ##### Examples #####

    ```python
    >>> arc = connecting_arc(0.4, 1.0, 10.0, 1.0)
    >>> len(arc), abs(arc.duration - 1.4) < 1e-12
    (5, True)
    >>> np.allclose(propagate([0.0, 1.0, 0.0], arc), [0.0, 1.0, 1.0])
    True

    >>> connecting_arc(0.5, 1.0, 1.0, 1.0) is None
    True
    >>> connecting_arc(1.0, 100.0, 10.0, 1.0) is None
    True

    ```
    """
    if not 0.0 < depth < m2:
        return None
    ramp = math.sqrt(depth / m0)
    hold = (gap - 4.0 * ramp * m2 + 2.0 * m0 * ramp**3) / (m2 - depth)
    if hold < 0.0:
        return None
    return PiecewiseControl.of(
        [
            (ramp, -m0),
            (ramp, m0),
            (hold, 0.0),
            (ramp, m0),
            (ramp, -m0),
        ]
    )


def _check_tangent(name: str, x: FloatArray, m2: float) -> None:
    if abs(x[0]) > TANGENCY_ATOL or abs(x[1] - m2) > TANGENCY_ATOL * max(
        1.0, m2
    ):
        raise InvalidJunctionPair(
            f"{name} state must have x1 = 0 and x2 = M2, given "
            f"{x.tolist()!r}",
            state=x.tolist(),
            m2=m2,
        )


def check_n3_shortcut(
    start: VectorLike,
    end: VectorLike,
    m0: float,
    m2: float,
    depths: Optional[Sequence[float]] = None,
) -> ShortcutReport:
    """
    Time every connecting arc in `depths` (default: fractions
    `DEFAULT_DEPTH_FRACTIONS` of `m2`) against riding the limit.

    ##### Examples #####

    ```python
    >>> report = check_n3_shortcut(
    ...     [0.0, 1.0, 0.0], [0.0, 1.0, 1.0], m0=10.0, m2=1.0,
    ...     depths=[0.1, 0.2, 0.4],
    ... )
    >>> report.shortcut_time
    1.0
    >>> report.shortcut_is_faster, report.compared
    (True, 3)
    >>> bool(np.all(np.diff(report.excess) > 0.0))
    True

    ```

    With `T = sqrt(d / M0)` the excess has the closed form
    `d (gap - 2 T M2) / (M2 (M2 - d))`:

    ```python
    >>> abs(report.excess[0] - 0.1 * (1.0 - 0.2) / 0.9) < 1e-9
    True

    ```

    When no depth connects the pair there is nothing to compare, and the
    verdict is `False`:

    ```python
    >>> report = check_n3_shortcut(
    ...     [0.0, 1.0, 0.0], [0.0, 1.0, 1.0], m0=1.0, m2=1.0, depths=[0.5]
    ... )
    >>> report.excess
    array([nan])
    >>> report.shortcut_is_faster, report.compared
    (False, 0)

    >>> check_n3_shortcut([0.0, 1.0, 2.0], [0.0, 1.0, 2.0], 1.0, 1.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.InvalidJunctionPair: junctions must be apart in x3,
        given 2.0 -> 2.0

    ```
    """
    for name, value in (("m0", m0), ("m2", m2)):
        if not is_positive_finite(value):
            raise NonPositiveBound(
                f"{name} must be positive and finite, given {value!r}",
                **{name: value},
            )
    x_start = np.asarray(start, dtype=np.float64)
    x_end = np.asarray(end, dtype=np.float64)
    _check_tangent("start", x_start, m2)
    _check_tangent("end", x_end, m2)
    gap = float(x_end[2] - x_start[2])
    if not gap > 0.0:
        raise InvalidJunctionPair(
            "junctions must be apart in x3,\n"
            f"    given {float(x_start[2])!r} -> {float(x_end[2])!r}",
            gap=gap,
        )

    if depths is None:
        depths = [m2 * f for f in DEFAULT_DEPTH_FRACTIONS]
    shortcut = gap / m2
    depths = np.asarray(depths, dtype=np.float64)
    times = np.full_like(depths, np.nan)
    for j, depth in enumerate(depths):
        arc = connecting_arc(float(depth), gap, m0, m2)
        if arc is None:
            log.debug("No connecting arc", depth=float(depth), gap=gap)
            continue
        landed = propagate(x_start, arc)
        if not np.allclose(
            landed, x_end, rtol=0.0, atol=1e-9 * max(1.0, abs(gap))
        ):
            raise SubPlannerFailure(
                "connecting arc missed the end junction",
                depth=float(depth),
                landed=landed.tolist(),
            )
        times[j] = arc.duration

    report = ShortcutReport(
        shortcut_time=shortcut,
        depths=depths,
        excursion_times=times,
        excess=times - shortcut,
    )
    log.debug(
        "Checked third-order shortcut",
        shortcut=shortcut,
        excess=report.excess.tolist(),
    )
    return report
