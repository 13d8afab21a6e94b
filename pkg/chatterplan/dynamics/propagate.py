"""
Exact propagation of an integrator chain under piecewise-constant control.

Within a segment of constant level `u` every state is a polynomial in the
local time `s`:

    x_k(s) = sum_{j=0..k} x_{k-j}(0) s^j / j!        (with x_0 = u)

Segments are chained by evaluating that at the segment duration. There is no
ODE stepping anywhere in here.
"""

from __future__ import annotations
from math import factorial

import numpy as np
from numpy.polynomial import Polynomial

import splatlog

from chatterplan.core import PiecewiseControl, as_state
from chatterplan.errors import OrderMismatch, ParamOutOfRange
from chatterplan.typings import FloatArray, VectorLike

__all__ = [
    "propagate_segment",
    "segment_states",
    "segment_polynomial",
    "propagate",
    "boundary_states",
    "states_at",
    "integral_cost",
]

log = splatlog.get_logger(__name__)


def _extended(x: FloatArray, u: float) -> FloatArray:
    # Index j holds x_j, with the control standing in as x_0.
    return np.concatenate(([u], x))


def _taylor_weights(s: FloatArray, order: int) -> FloatArray:
    s = np.asarray(s, dtype=np.float64).reshape(-1, 1)
    j = np.arange(order + 1)
    inverse_factorials = np.array([1.0 / factorial(i) for i in j])
    return s**j * inverse_factorials


def segment_states(x: VectorLike, u: float, s: FloatArray) -> FloatArray:
    """
    States at local times `s` into a segment that starts at `x` with level
    `u`. Shape `(len(s), n)`. Negative `s` runs the segment backwards.

    ##### Examples #####

    ```python
    >>> segment_states([0.0, 0.0, 0.0], 1.0, np.array([0.0, 2.0]))
    array([[0.        , 0.        , 0.        ],
           [2.        , 2.        , 1.33333333]])

    ```
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    ext = _extended(x, u)
    weights = _taylor_weights(s, n)
    out = np.empty((weights.shape[0], n))
    for k in range(1, n + 1):
        out[:, k - 1] = weights[:, : k + 1] @ ext[k::-1]
    return out


def propagate_segment(x: VectorLike, u: float, duration: float) -> FloatArray:
    """
    ##### Examples #####

    ```python
    >>> propagate_segment([0.0, 0.0, 0.0, 0.0], 1.0, 1.0)
    array([1.        , 0.5       , 0.16666667, 0.04166667])

    ```
    """
    return segment_states(x, u, np.array([duration]))[0]


def segment_polynomial(x: VectorLike, u: float, k: int) -> Polynomial:
    """
    `x_k` over a segment as a `numpy` polynomial in the local time.

    ##### Examples #####

    ```python
    >>> segment_polynomial([1.0, 0.0, 0.0], -1.0, 3).coef
    array([ 0.        ,  0.        ,  0.5       , -0.16666667])

    ```
    """
    ext = _extended(np.asarray(x, dtype=np.float64), u)
    return Polynomial([ext[k - j] / factorial(j) for j in range(k + 1)])


def _check_order(x0: FloatArray, order: int | None) -> None:
    if order is not None and x0.shape[0] != order:
        raise OrderMismatch(
            f"expected order {order}, given {x0.shape[0]} components",
            order=order,
            given=x0.shape[0],
        )


def propagate(
    x0: VectorLike, pc: PiecewiseControl, order: int | None = None
) -> FloatArray:
    """
    State at the end of `pc`, starting from `x0`.

    ##### Examples #####

    ```python
    >>> from chatterplan.core import PiecewiseControl

    >>> propagate([0, 0, 0, 0], PiecewiseControl.of([(1.0, 1.0)]))
    array([1.        , 0.5       , 0.16666667, 0.04166667])

    >>> x = propagate(
    ...     [0, 0, 0, 0], PiecewiseControl.of([(1.0, 1.0), (1.0, -1.0)])
    ... )
    >>> x[:3]
    array([0., 1., 1.])

    >>> propagate([1.5, -2.0, 3.0], PiecewiseControl())
    array([ 1.5, -2. ,  3. ])

    >>> propagate([1.0, 0.0], PiecewiseControl(), order=3)
    Traceback (most recent call last):
      ...
    chatterplan.errors.OrderMismatch: expected order 3, given 2 components

    ```
    """
    x = as_state(x0)
    _check_order(x, order)
    for segment in pc:
        x = propagate_segment(x, segment.level, segment.duration)
    return as_state(x)


def boundary_states(x0: VectorLike, pc: PiecewiseControl) -> FloatArray:
    """States at every entry of `pc.boundaries()`, shape `(len(pc) + 1, n)`."""
    x = as_state(x0)
    out = np.empty((len(pc) + 1, x.shape[0]))
    out[0] = x
    for i, segment in enumerate(pc):
        out[i + 1] = propagate_segment(out[i], segment.level, segment.duration)
    return out


def states_at(
    x0: VectorLike, pc: PiecewiseControl, times: FloatArray
) -> FloatArray:
    """
    States at absolute `times`, each evaluated from the start of the segment
    containing it. Past the end, the last level keeps going (zero control for
    an empty schedule).

    ##### Examples #####

    ```python
    >>> from chatterplan.core import PiecewiseControl
    >>> pc = PiecewiseControl.of([(1.0, 1.0), (1.0, -1.0)])
    >>> states_at([0.0, 0.0], pc, np.array([0.5, 1.0, 2.0]))
    array([[0.5  , 0.125],
           [1.   , 0.5  ],
           [0.   , 1.   ]])

    ```
    """
    times = np.asarray(times, dtype=np.float64).reshape(-1)
    x = as_state(x0)
    if times.size and times.min() < pc.t0:
        raise ParamOutOfRange(
            f"times must not precede t0 = {pc.t0!r}", t0=pc.t0
        )
    if not len(pc):
        return segment_states(x, 0.0, times - pc.t0)

    starts = boundary_states(x, pc)
    edges = pc.boundaries()
    index = np.clip(
        np.searchsorted(edges, times, side="right") - 1, 0, len(pc) - 1
    )
    out = np.empty((times.shape[0], x.shape[0]))
    for i in np.unique(index):
        mask = index == i
        out[mask] = segment_states(
            starts[i], pc.segments[i].level, times[mask] - edges[i]
        )
    return out


def integral_cost(
    x0: VectorLike, pc: PiecewiseControl, component: int
) -> float:
    """
    Exact integral of `x_component` over the whole schedule, one polynomial
    antiderivative per segment.

    ##### Examples #####

    ```python
    >>> from chatterplan.core import PiecewiseControl

    >>> integral_cost([0.0, 0.0, 1.0], PiecewiseControl.of([(2.0, 0.0)]), 3)
    2.0

    >>> integral_cost([1.0, 0.0, 0.0], PiecewiseControl(), 3)
    0.0

    >>> integral_cost([1.0, 0.0, 0.0], PiecewiseControl(), 4)
    Traceback (most recent call last):
      ...
    chatterplan.errors.OrderMismatch: component must be in 1..3, given 4

    ```
    """
    x = as_state(x0)
    n = x.shape[0]
    if not 1 <= component <= n:
        raise OrderMismatch(
            f"component must be in 1..{n}, given {component}",
            order=n,
            component=component,
        )
    total = 0.0
    for segment in pc:
        ext = _extended(x, segment.level)
        T = segment.duration
        total += sum(
            ext[component - j] * T ** (j + 1) / factorial(j + 1)
            for j in range(component + 1)
        )
        x = propagate_segment(x, segment.level, T)
    log.debug(
        "Integrated state component",
        component=component,
        segments=len(pc),
        value=total,
    )
    return float(total)
