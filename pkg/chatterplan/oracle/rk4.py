"""
Fixed-step RK4 for the integrator chain, independent of the closed-form
propagator.
"""

from __future__ import annotations
import math

import numpy as np

from chatterplan.core import PiecewiseControl
from chatterplan.errors import ParamOutOfRange
from chatterplan.typings import FloatArray, VectorLike

__all__ = ["rk4_reference"]


def _rate(x: FloatArray, u: float) -> FloatArray:
    return np.concatenate(([u], x[:-1]))


def rk4_reference(
    x0: VectorLike, pc: PiecewiseControl, dt: float
) -> FloatArray:
    """
    Each segment is cut into equal steps no longer than `dt`, so switches
    land on step boundaries.

    ##### Examples #####

    ```python
    >>> from chatterplan.dynamics import propagate
    >>> pc = PiecewiseControl.of([(0.7, 1.0), (1.3, -1.0), (0.4, 0.5)])
    >>> x0 = [0.2, -0.1, 0.3, 1.0]
    >>> error = rk4_reference(x0, pc, 1e-2) - propagate(x0, pc)
    >>> bool(np.max(np.abs(error)) <= 1e-10)
    True

    >>> rk4_reference([1.0, 2.0], PiecewiseControl(), 0.1)
    array([1., 2.])

    >>> rk4_reference([1.0], pc, 0.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: dt must be positive, given 0.0

    ```
    """
    if not dt > 0:
        raise ParamOutOfRange(f"dt must be positive, given {dt!r}", dt=dt)
    x = np.array(x0, dtype=np.float64).reshape(-1)
    for segment in pc:
        steps = max(1, math.ceil(segment.duration / dt))
        h = segment.duration / steps
        u = segment.level
        for _ in range(steps):
            k1 = _rate(x, u)
            k2 = _rate(x + 0.5 * h * k1, u)
            k3 = _rate(x + 0.5 * h * k2, u)
            k4 = _rate(x + h * k3, u)
            x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return x
