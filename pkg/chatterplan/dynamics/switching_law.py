"""
Reading a symbolic switching law off a concrete schedule.
"""

from __future__ import annotations
import math

import splatlog

from chatterplan.core import (
    AugmentedSwitchingLaw,
    Bounds,
    LawItem,
    PiecewiseControl,
    SystemBehavior,
    TangentMarker,
    as_state,
)
from chatterplan.core.switching_law import is_valid_degree
from chatterplan.errors import ParamOutOfRange
from chatterplan.typings import FloatArray, VectorLike

from .propagate import boundary_states

__all__ = ["derive_switching_law"]

log = splatlog.get_logger(__name__)


def _on_bound(x: FloatArray, bounds: Bounds, k: int, tol: float) -> bool:
    limit = bounds.limit(k)
    if math.isinf(limit):
        return False
    return abs(abs(x[k - 1]) - limit) <= tol * max(1.0, limit)


def _riding(x: FloatArray, bounds: Bounds, tol: float) -> int | None:
    # Under zero control x_k holds still iff every lower state is zero.
    for k in range(1, bounds.order + 1):
        if _on_bound(x, bounds, k, tol):
            return k
        if abs(x[k - 1]) > tol:
            return None
    return None


def _contact_degree(x: FloatArray, k: int, tol: float) -> int:
    for j in range(1, k):
        if abs(x[k - j - 1]) > tol:
            return j
    return k


def derive_switching_law(
    pc: PiecewiseControl,
    x0: VectorLike,
    bounds: Bounds,
    tol: float = 1e-7,
) -> AugmentedSwitchingLaw:
    """
    Derive the augmented switching law that `pc` follows from `x0`.

    Nonzero levels are unconstrained arcs. A zero level must sit on some
    bound, `x_k == ±M_k` with every lower state zero, which makes it a
    constrained arc. At each switch instant, a state that touches its bound
    without riding it on either side gets a tangent marker.

    ##### Examples #####

    ```python
    >>> from chatterplan.core import Bounds, PiecewiseControl

    >>> b = Bounds.of(1, 1, "inf")
    >>> str(derive_switching_law(
    ...     PiecewiseControl.of([(1.0, 1.0), (1.0, 0.0), (1.0, -1.0)]),
    ...     [0.0, 0.0],
    ...     b,
    ... ))
    '0+ 1+ 0-'

    >>> str(derive_switching_law(
    ...     PiecewiseControl.of([(1.0, 1.0), (1.0, -1.0)]), [0.0, 0.0], b
    ... ))
    '0+ (1+,1) 0-'

    ```

    A second-order contact of `x2` on its upper bound:

    ```python
    >>> str(derive_switching_law(
    ...     PiecewiseControl.of(
    ...         [(1.0, 1.0), (1.0, -1.0), (1.0, -1.0), (1.0, 1.0)]
    ...     ),
    ...     [0.0, 0.0, 0.0],
    ...     Bounds.of(1, "inf", 1, "inf"),
    ... ))
    '0+ 0- (2+,2) 0- 0+'

    >>> derive_switching_law(
    ...     PiecewiseControl.of([(1.0, 0.0)]), [0.5, 0.0], b
    ... )
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: zero-level segment 0 rides no bound

    ```
    """
    x0 = as_state(x0, bounds.order)
    starts = boundary_states(x0, pc)
    m0 = bounds.m0

    riding: list[int | None] = []
    behaviors: list[SystemBehavior] = []
    for i, segment in enumerate(pc):
        if abs(segment.level) > tol * max(1.0, m0):
            riding.append(None)
            behaviors.append(SystemBehavior(0, 1 if segment.level > 0 else -1))
            continue
        k = _riding(starts[i], bounds, tol)
        if k is None:
            raise ParamOutOfRange(
                f"zero-level segment {i} rides no bound",
                segment=i,
                state=starts[i],
            )
        riding.append(k)
        behaviors.append(
            SystemBehavior(k, 1 if starts[i][k - 1] > 0 else -1)
        )

    items: list[LawItem] = []
    for i, behavior in enumerate(behaviors):
        if i > 0:
            x = starts[i]
            for k in range(1, bounds.order + 1):
                if k in (riding[i - 1], riding[i]):
                    continue
                if not _on_bound(x, bounds, k, tol):
                    continue
                degree = _contact_degree(x, k, tol)
                if is_valid_degree(k, degree):
                    items.append(
                        TangentMarker(k, 1 if x[k - 1] > 0 else -1, degree)
                    )
        items.append(behavior)

    law = AugmentedSwitchingLaw.merged(items)
    log.debug("Derived switching law", law=str(law), segments=len(pc))
    return law
