"""
Box limits and states.

A problem of order `n` has states `x_1 ... x_n` (`x_k` is the `k`-th integral
of the control) and limits `M_0 ... M_n`, where `M_0` bounds the control
itself. Limits on states may be absent, which is spelled
`chatterplan.core.bounds.Unbounded.INF` rather than a big number.
"""

from __future__ import annotations
import dataclasses
from enum import Enum
import math
from typing import Any, Iterable, Optional, Union

import numpy as np

from chatterplan.errors import (
    InfiniteControlBound,
    LengthMismatch,
    NonPositiveBound,
    OrderMismatch,
)
from chatterplan.lib.text import fmt
from chatterplan.typings import FloatArray, VectorLike

__all__ = [
    "Unbounded",
    "BoundValue",
    "as_bound_value",
    "Bounds",
    "validate_bounds",
    "as_state",
    "FEASIBILITY_RTOL",
]

# Relative slack applied to every state constraint check.
FEASIBILITY_RTOL = 1e-9


class Unbounded(Enum):
    INF = "inf"

    def __float__(self) -> float:
        return math.inf

    def __repr__(self) -> str:
        return "Unbounded.INF"

    def to_json_encodable(self) -> str:
        return self.value


BoundValue = Union[float, Unbounded]


def as_bound_value(x: Any) -> BoundValue:
    """
    ##### Examples #####

    ```python
    >>> as_bound_value(1.5)
    1.5

    >>> as_bound_value(4)
    4.0

    >>> as_bound_value("inf")
    Unbounded.INF

    >>> as_bound_value(None)
    Unbounded.INF

    >>> as_bound_value(math.inf)
    Unbounded.INF

    >>> as_bound_value("lots")
    Traceback (most recent call last):
      ...
    TypeError: Expected bound to be a number, 'inf' or None, given str: 'lots'

    ```
    """
    if x is None or x is Unbounded.INF or x == "inf":
        return Unbounded.INF
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        if math.isinf(x) and x > 0:
            return Unbounded.INF
        return float(x)
    raise TypeError(
        "Expected bound to be a number, 'inf' or None, given {}: {}".format(
            fmt(type(x)), fmt(x)
        )
    )


@dataclasses.dataclass(frozen=True)
class Bounds:
    """
    Limits `M_0 ... M_n` for an order-`n` chain of integrators.

    Construction does not validate, so that `validate_bounds` can report what
    is wrong. Use `Bounds.of` to build and validate in one go.

    ##### Examples #####

    ```python
    >>> b = Bounds.of(1, 1, 1.5, 4, 15)
    >>> b.order
    4
    >>> b.limit(2)
    1.5

    >>> Bounds.of(1, None, "inf").limit(1)
    inf

    >>> b.is_feasible([0.5, -1.5, 4.0, 0.0])
    True

    >>> b.is_feasible([0.5, -1.6, 4.0, 0.0])
    False

    ```

    A hair over the limit passes; the slack is relative to the limit.

    ```python
    >>> b.is_feasible([0.0, 0.0, 4.0 + 1e-9, 0.0])
    True

    ```
    """

    order: int
    m: tuple[BoundValue, ...]

    @classmethod
    def of(cls, *values: Any) -> Bounds:
        m = tuple(as_bound_value(v) for v in values)
        return validate_bounds(cls(order=len(m) - 1, m=m))

    @classmethod
    def cast(cls, value: Any) -> Bounds:
        if isinstance(value, cls):
            return validate_bounds(value)
        if isinstance(value, Iterable) and not isinstance(value, str):
            return cls.of(*value)
        raise TypeError(
            "Expected {}, given {}: {}".format(
                fmt(Union[cls, list]), fmt(type(value)), fmt(value)
            )
        )

    @property
    def m0(self) -> float:
        return self.limit(0)

    def limit(self, k: int) -> float:
        value = self.m[k]
        return math.inf if value is Unbounded.INF else value

    def limits(self) -> FloatArray:
        return np.array([self.limit(k) for k in range(self.order + 1)])

    def tolerance(self, k: int) -> float:
        limit = self.limit(k)
        if math.isinf(limit):
            return 0.0
        return FEASIBILITY_RTOL * max(1.0, limit)

    def is_feasible(self, x: VectorLike) -> bool:
        state = as_state(x, self.order)
        return all(
            abs(state[k - 1]) <= self.limit(k) + self.tolerance(k)
            for k in range(1, self.order + 1)
        )

    def replace(self, k: int, value: Any) -> Bounds:
        m = list(self.m)
        m[k] = as_bound_value(value)
        return Bounds.of(*m)

    def to_json_encodable(self) -> list:
        return [
            v.to_json_encodable() if v is Unbounded.INF else v for v in self.m
        ]


def validate_bounds(b: Bounds) -> Bounds:
    """
    Check the invariants of `b`, returning it unchanged when they hold.

    ##### Examples #####

    ```python
    >>> validate_bounds(Bounds(order=4, m=(1.0, 1.0, 1.5, 4.0, 15.0))).order
    4

    >>> validate_bounds(Bounds(order=2, m=(1.0, Unbounded.INF, Unbounded.INF)))
    Bounds(order=2, m=(1.0, Unbounded.INF, Unbounded.INF))

    >>> validate_bounds(Bounds(order=1, m=(0.0, 1.0)))
    Traceback (most recent call last):
      ...
    chatterplan.errors.NonPositiveBound: M_0 must be positive, given 0.0

    >>> validate_bounds(Bounds(order=1, m=(Unbounded.INF, 1.0)))
    Traceback (most recent call last):
      ...
    chatterplan.errors.InfiniteControlBound: M_0 must be finite

    >>> validate_bounds(Bounds(order=3, m=(1.0, 1.0)))
    Traceback (most recent call last):
      ...
    chatterplan.errors.LengthMismatch: order 3 needs 4 limits, given 2

    ```
    """
    if b.order < 1:
        raise LengthMismatch(
            f"order must be at least 1, given {b.order}", order=b.order
        )
    if len(b.m) != b.order + 1:
        raise LengthMismatch(
            f"order {b.order} needs {b.order + 1} limits, given {len(b.m)}",
            order=b.order,
            count=len(b.m),
        )
    if b.m[0] is Unbounded.INF:
        raise InfiniteControlBound("M_0 must be finite")
    for k, value in enumerate(b.m):
        if value is Unbounded.INF:
            continue
        if not isinstance(value, (int, float)) or not value > 0:
            raise NonPositiveBound(
                f"M_{k} must be positive, given {value!r}", k=k, value=value
            )
    return b


def as_state(x: VectorLike, order: Optional[int] = None) -> FloatArray:
    """
    Make a flat, read-only `float64` state array, checking its length against
    `order` when given.

    ##### Examples #####

    ```python
    >>> as_state([1, 0, 0])
    array([1., 0., 0.])

    >>> as_state([1, 0, 0]).flags.writeable
    False

    >>> as_state([1, 0], 3)
    Traceback (most recent call last):
      ...
    chatterplan.errors.OrderMismatch: expected order 3, given 2 components

    ```
    """
    state = np.array(x, dtype=np.float64).reshape(-1)
    if order is not None and state.shape[0] != order:
        raise OrderMismatch(
            f"expected order {order}, given {state.shape[0]} components",
            order=order,
            given=state.shape[0],
        )
    state.flags.writeable = False
    return state

