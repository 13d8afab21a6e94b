"""
Regions of the scaled state space and the cheap tests that sort a state into
one before any switch times get solved for.

States are `(y1, y2, y3)` with `y3 >= 0` required. Tolerances are applied per
component relative to the state's own scale, `sigma**k` for component `k`,
so that tests behave the same for `y` and its homogeneous stretch
`(a y1, a**2 y2, a**3 y3)`.
"""

from __future__ import annotations
from enum import Enum
import math
from typing import Optional

import numpy as np

from chatterplan.core import as_state
from chatterplan.errors import NegativeY3
from chatterplan.typings import FloatArray, VectorLike

__all__ = [
    "RegionLabel",
    "as_scaled_state",
    "state_scale",
    "minus_invariants",
    "plus_invariants",
    "lowest_push",
    "on_no_chatter_curve",
    "precheck",
]


class RegionLabel(Enum):
    OMEGA_MINUS = "OmegaMinus"
    OMEGA_PLUS = "OmegaPlus"
    OMEGA_INFEASIBLE = "OmegaInfeasible"
    ON_GAMMA_PLUS = "OnGammaPlus"
    ON_GAMMA_MINUS = "OnGammaMinus"
    ON_GAMMA_F = "OnGammaF"
    NO_CHATTER_CURVE = "NoChatterCurve"

    def __str__(self) -> str:
        return self.value


def as_scaled_state(y: VectorLike) -> FloatArray:
    return as_state(y, 3)


def state_scale(y: FloatArray) -> float:
    """
    ##### Examples #####

    ```python
    >>> state_scale(np.array([0.0, -4.0, 0.0]))
    2.0

    ```
    """
    return max(
        abs(y[0]),
        math.sqrt(abs(y[1])),
        abs(y[2]) ** (1.0 / 3.0),
        np.finfo(float).tiny,
    )


def minus_invariants(y) -> tuple[float, float]:
    """Quantities conserved along a `-1` arc."""
    y1, y2, y3 = y
    return y2 + 0.5 * y1**2, y3 + y1 * y2 + y1**3 / 3.0


def plus_invariants(y) -> tuple[float, float]:
    """Quantities conserved along a `+1` arc."""
    y1, y2, y3 = y
    return y2 - 0.5 * y1**2, y3 - y1 * y2 + y1**3 / 3.0


def _interior_minimum(
    y1: float, y2: float, y3: float
) -> Optional[tuple[float, float]]:
    # Local minimum of y3 + y2 s + y1 s**2 / 2 + s**3 / 6, at the larger
    # root of its derivative.
    disc = y1**2 - 2.0 * y2
    if disc < 0:
        return None
    s = -y1 + math.sqrt(disc)
    if s <= 0:
        return None
    return y3 + y2 * s + 0.5 * y1 * s**2 + s**3 / 6.0, s


def lowest_push(y: FloatArray) -> tuple[float, float]:
    """
    Lowest `y3` reached under `v = +1` for all time, and when.

    Holding `+1` is the best any control can do for `y3`, so a negative
    value here means the state is infeasible.

    ##### Examples #####

    ```python
    >>> lowest_push(np.array([1.0, 0.0, 0.0]))
    (0.0, 0.0)

    >>> value, s = lowest_push(np.array([-2.0, 1.5, 0.0]))
    >>> abs(value) < 1e-12, s
    (True, 3.0)

    ```
    """
    y1, y2, y3 = (float(v) for v in y)
    interior = _interior_minimum(y1, y2, y3)
    if interior is not None and interior[0] <= y3:
        return interior
    return y3, 0.0


def on_no_chatter_curve(y: FloatArray, tol: float = 1e-9) -> bool:
    """
    Is `y` on `(t, -t**2 / 2, t**3 / 6)` for some `t >= 0`? From there
    `v = -1` for `t` lands on the origin directly.

    ##### Examples #####

    ```python
    >>> on_no_chatter_curve(np.array([2.0, -2.0, 4.0 / 3.0]))
    True

    >>> on_no_chatter_curve(np.zeros(3))
    True

    >>> on_no_chatter_curve(np.array([1.0, 0.0, 0.0]))
    False

    ```
    """
    sigma = state_scale(y)
    t = y[0]
    return bool(
        t >= -tol * sigma
        and abs(y[1] + 0.5 * t**2) <= tol * max(1.0, sigma**2)
        and abs(y[2] - t**3 / 6.0) <= tol * max(1.0, sigma**3)
    )


def precheck(y: FloatArray, tol: float = 1e-9) -> Optional[RegionLabel]:
    """
    Settle the labels that need no switch-time solve, or return `None`.

    ##### Examples #####

    ```python
    >>> precheck(np.array([2.0, -2.0, 4.0 / 3.0]))
    <RegionLabel.NO_CHATTER_CURVE: 'NoChatterCurve'>

    >>> precheck(np.array([-2.0 - 1e-3, 1.5, 0.0]))
    <RegionLabel.OMEGA_INFEASIBLE: 'OmegaInfeasible'>

    >>> precheck(np.array([-2.0, 1.5, 0.0]))
    <RegionLabel.ON_GAMMA_F: 'OnGammaF'>

    >>> precheck(np.array([1.0, 0.0, 0.0])) is None
    True

    >>> precheck(np.array([1.0, 0.0, -0.5]))
    Traceback (most recent call last):
      ...
    chatterplan.errors.NegativeY3: y3 must be >= 0, given -0.5

    ```
    """
    sigma = state_scale(y)
    y3_tol = tol * max(1.0, sigma**3)
    if y[2] < -y3_tol:
        raise NegativeY3(f"y3 must be >= 0, given {float(y[2])!r}", y=y)
    lowest, when = lowest_push(y)
    if lowest < -y3_tol:
        return RegionLabel.OMEGA_INFEASIBLE
    if on_no_chatter_curve(y, tol):
        return RegionLabel.NO_CHATTER_CURVE
    if when > tol * sigma and lowest <= y3_tol:
        return RegionLabel.ON_GAMMA_F
    return None
