from __future__ import annotations
import math
from typing import (
    Literal,
    Sequence,
    TypedDict,
    TypeGuard,
    Union,
    TYPE_CHECKING,
)

import numpy as np
import numpy.typing as npt

from chatterplan.lib.text import fmt

if TYPE_CHECKING:
    from chatterplan.json.json_encoder import JSONEncoder

# Numbers & Vectors
# ============================================================================
#
# States are plain `numpy` float arrays. `chatterplan.core.bounds.as_state` is
# the one place they get built from whatever the caller hands over, so
# everything downstream can assume a flat, read-only `float64` array.
#

Number = Union[int, float]

FloatArray = npt.NDArray[np.float64]

VectorLike = Union[Sequence[Number], FloatArray]

# Control levels and constraint sides are signed unit values.
Sign = Literal[-1, 1]


def is_sign(x: object) -> TypeGuard[Sign]:
    """
    ##### Examples #####

    ```python
    >>> is_sign(1)
    True

    >>> is_sign(-1)
    True

    >>> is_sign(0)
    False

    >>> is_sign(True)
    False

    ```
    """
    return isinstance(x, int) and not isinstance(x, bool) and x in (-1, 1)


def as_sign(x: object) -> Sign:
    """
    Cast a value to a `Sign`, accepting the characters used in switching law
    text as well.

    ##### Examples #####

    ```python
    >>> as_sign("+")
    1

    >>> as_sign("-")
    -1

    >>> as_sign(-1.0)
    -1

    >>> as_sign(0)
    Traceback (most recent call last):
      ...
    TypeError: Expected sign to be -1, 1, '+' or '-', given int: 0

    ```
    """
    if x == "+":
        return 1
    if x == "-":
        return -1
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        if x == 1:
            return 1
        if x == -1:
            return -1
    raise TypeError(
        "Expected sign to be -1, 1, '+' or '-', given {}: {}".format(
            fmt(type(x)), fmt(x)
        )
    )


def is_positive_finite(x: object) -> TypeGuard[float]:
    """
    ##### Examples #####

    ```python
    >>> is_positive_finite(1e-12)
    True

    >>> is_positive_finite(0.0)
    False

    >>> is_positive_finite(math.inf)
    False

    >>> is_positive_finite(math.nan)
    False

    ```
    """
    return (
        isinstance(x, (int, float))
        and not isinstance(x, bool)
        and math.isfinite(x)
        and x > 0
    )


# Config Documents
# ============================================================================
#
# Shapes of the JSON documents `chatterplan plan --config` reads. Checked with
# `typeguard` in `chatterplan.config`.
#

# A bound entry: a number, or `"inf"` / `null` for "no constraint".
BoundEntry = Union[Number, Literal["inf"], None]

PlanMode = Literal["problem7", "mim", "rest_to_rest"]


class _Problem7Required(TypedDict):
    mode: Literal["problem7", "mim"]
    x01: Number
    m0: Number
    m3: Number
    x04: Number
    xf4: Number


class Problem7Config(_Problem7Required, total=False):
    cycles: int
    tol: Number
    dt: Number


class _RestToRestRequired(TypedDict):
    mode: Literal["rest_to_rest"]
    bounds: list[BoundEntry]


class RestToRestConfig(_RestToRestRequired, total=False):
    start: Number
    end: Number
    cycles: int
    tol: Number
    dt: Number


PlanConfig = Union[Problem7Config, RestToRestConfig]

# JSON
# ============================================================================

JSONEncoderStyle = Literal["compact", "pretty"]

JSONEncoderCastable = Union[None, "JSONEncoder", JSONEncoderStyle, dict]
