"""
Closed-form switching surfaces of the scaled problem.

Every surface is a family of states, parameterized by a scale `a >= 0` and
one or two times, that reach the junction state `(a, 0, 0)` along a fixed
sequence of extreme controls:

| Surface       | Path to `(a, 0, 0)`               | Parameters              |
| ------------- | --------------------------------- | ----------------------- |
| `GAMMA_PLUS`  | `+1` for `a (t1 - t2)`, then `-1` | `t2* <= t2 <= r* <= t1` |
| `GAMMA_MINUS` | `-1` for `a t`                    | `0 <= t <= r*`          |
| `GAMMA_F`     | `+1` for `a t`, to `y3 = 0`       | `0 <= t <= 3`           |

The `-1` arc on `GAMMA_PLUS` lasts `a t2`.

On `GAMMA_PLUS` the two switch instants are both roots of the costate, which
couples them: `f(t1) == f(t2)` with

    f(r) = prod(r + beta_k tau1) / r**2

`f` has a single stationary point on `(0, inf)`, a minimum at `r*`. `t2*`
is where `GAMMA_PLUS` meets `y3 = 0`.
"""

from __future__ import annotations
import dataclasses
from enum import Enum
from functools import lru_cache
import math
from typing import Sequence

import numpy as np
from scipy import optimize

import splatlog

from chatterplan.chattering import check_tol, solve_constants
from chatterplan.errors import NoConvergence, ParamOutOfRange
from chatterplan.typings import FloatArray

__all__ = [
    "SurfaceKind",
    "SurfacePoint",
    "SurfaceConstants",
    "surface_constants",
    "coupled_t1",
    "gamma_plus_y3",
    "eval_surface",
    "GAMMA_F_T_MAX",
]

log = splatlog.get_logger(__name__)

GAMMA_F_T_MAX = 3.0

# Relative slack on parameter boxes.
PARAM_RTOL = 1e-9


class SurfaceKind(Enum):
    GAMMA_PLUS = "GammaPlus"
    GAMMA_MINUS = "GammaMinus"
    GAMMA_F = "GammaF"


@dataclasses.dataclass(frozen=True)
class SurfaceConstants:
    """
    ##### Examples #####

    ```python
    >>> sc = surface_constants()
    >>> abs(sc.r_star - 6.4979) < 1e-3
    True
    >>> abs(sc.t1_star - 16.8674) < 1e-3, abs(sc.t2_star - 2.7289) < 1e-3
    (True, True)
    >>> abs(sc.log_f(sc.t1_star) - sc.log_f(sc.t2_star)) < 1e-9
    True

    ```
    """

    r_star: float
    t1_star: float
    t2_star: float
    offsets: tuple[float, float, float]

    def log_f(self, r):
        r = np.asarray(r, dtype=np.float64)
        return sum(np.log(r + c) for c in self.offsets) - 2.0 * np.log(r)

    def f(self, r):
        return np.exp(self.log_f(r))


def _log_f_slope(r: float, offsets: Sequence[float]) -> float:
    return sum(1.0 / (r + c) for c in offsets) - 2.0 / r


def gamma_plus_y3(t1, t2):
    """`y3 / a**3` of a `GAMMA_PLUS` point."""
    return (
        t1**2 * t2
        - t1 * t2**2
        + 0.5 * t1**2
        - t1**3 / 6.0
        + t2**3 / 3.0
    )


def _coupled_t1(t2: float, r_star: float, log_f) -> float:
    if t2 >= r_star * (1.0 - 1e-12):
        return r_star
    target = float(log_f(t2))
    if log_f(r_star) >= target:
        return r_star
    hi = 2.0 * r_star
    while log_f(hi) < target:
        hi *= 2.0
        if hi > 1e12:
            raise NoConvergence(
                f"no coupled t1 for t2 = {t2!r}", t2=t2, r_star=r_star
            )
    return optimize.brentq(
        lambda r: float(log_f(r)) - target,
        r_star,
        hi,
        xtol=1e-14,
        rtol=4 * np.finfo(float).eps,
    )


def coupled_t1(t2: float, sc: SurfaceConstants | None = None) -> float:
    """
    The `t1 >= r*` paired with `t2 <= r*` by `f(t1) == f(t2)`.

    ##### Examples #####

    ```python
    >>> sc = surface_constants()
    >>> abs(coupled_t1(sc.t2_star, sc) - sc.t1_star) < 1e-9
    True
    >>> coupled_t1(sc.r_star, sc) == sc.r_star
    True

    ```
    """
    sc = surface_constants() if sc is None else sc
    if not 0.0 < t2 <= sc.r_star * (1.0 + PARAM_RTOL):
        raise ParamOutOfRange(
            f"t2 must be in (0, r*], given {t2!r}", t2=t2, r_star=sc.r_star
        )
    return _coupled_t1(t2, sc.r_star, sc.log_f)


def surface_constants(tol: float = 1e-12) -> SurfaceConstants:
    check_tol(tol)
    return _surface_constants(float(tol))


@lru_cache(maxsize=8)
def _surface_constants(tol: float) -> SurfaceConstants:
    c = solve_constants(tol)
    offsets = tuple(b * c.tau1 for b in c.betas)

    def log_f(r):
        return sum(math.log(r + k) for k in offsets) - 2.0 * math.log(r)

    try:
        r_star = optimize.brentq(
            _log_f_slope, 1e-3, 1e3, args=(offsets,), xtol=1e-14
        )
        t2_star = optimize.brentq(
            lambda t2: gamma_plus_y3(_coupled_t1(t2, r_star, log_f), t2),
            1.0,
            r_star * (1.0 - 1e-9),
            xtol=1e-14,
        )
    except ValueError as error:
        raise NoConvergence(
            f"surface constants: {error}", offsets=offsets
        ) from error

    sc = SurfaceConstants(
        r_star=r_star,
        t1_star=_coupled_t1(t2_star, r_star, log_f),
        t2_star=t2_star,
        offsets=offsets,
    )
    log.info(
        "Solved surface constants",
        r_star=sc.r_star,
        t1_star=sc.t1_star,
        t2_star=sc.t2_star,
    )
    return sc


@dataclasses.dataclass(frozen=True)
class SurfacePoint:
    surface: SurfaceKind
    a: float
    params: tuple[float, ...]
    y: FloatArray

    @classmethod
    def of(
        cls, surface: SurfaceKind, a: float, params: Sequence[float]
    ) -> SurfacePoint:
        return cls(surface, a, tuple(params), eval_surface(surface, a, params))


def _unit_point(surface: SurfaceKind, params: Sequence[float]) -> FloatArray:
    if surface is SurfaceKind.GAMMA_PLUS:
        t1, t2 = params
        return np.array(
            [
                1.0 - t1 + 2.0 * t2,
                -t1 - 2.0 * t1 * t2 + 0.5 * t1**2 + t2**2,
                gamma_plus_y3(t1, t2),
            ]
        )
    (t,) = params
    if surface is SurfaceKind.GAMMA_MINUS:
        return np.array([1.0 + t, -(t + 0.5 * t**2), 0.5 * t**2 + t**3 / 6.0])
    return np.array([1.0 - t, -t + 0.5 * t**2, 0.5 * t**2 - t**3 / 6.0])


def _check_params(
    surface: SurfaceKind, params: Sequence[float], sc: SurfaceConstants
) -> None:
    slack = PARAM_RTOL * max(1.0, sc.t1_star)

    def problem(message: str) -> ParamOutOfRange:
        return ParamOutOfRange(
            message, surface=surface.value, params=tuple(params)
        )

    if surface is SurfaceKind.GAMMA_PLUS:
        if len(params) != 2:
            raise problem("GammaPlus takes (t1, t2)")
        t1, t2 = params
        if not (
            sc.t2_star - slack <= t2 <= sc.r_star + slack
            and sc.r_star - slack <= t1 <= sc.t1_star + slack
        ):
            raise problem(
                f"GammaPlus needs t2* <= t2 <= r* <= t1 <= t1*, given {t1!r}, "
                f"{t2!r}"
            )
        return

    if len(params) != 1:
        raise problem(f"{surface.value} takes a single t")
    (t,) = params
    t_max = sc.r_star if surface is SurfaceKind.GAMMA_MINUS else GAMMA_F_T_MAX
    if not -slack <= t <= t_max + slack:
        raise problem(
            f"{surface.value} needs 0 <= t <= {t_max:.4f}, given {t!r}"
        )


def eval_surface(
    surface: SurfaceKind, a: float, params: Sequence[float]
) -> FloatArray:
    """
    ##### Examples #####

    ```python
    >>> eval_surface(SurfaceKind.GAMMA_F, 1.0, [3.0])
    array([-2. ,  1.5,  0. ])

    >>> eval_surface(SurfaceKind.GAMMA_MINUS, 1.0, [0.0])
    array([ 1., -0.,  0.])

    >>> eval_surface(SurfaceKind.GAMMA_F, 2.0, [1.0])
    array([ 0.        , -2.        ,  2.66666667])

    >>> eval_surface(SurfaceKind.GAMMA_F, 1.0, [4.0])
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: GammaF needs 0 <= t <= 3.0000,
        given 4.0

    ```

    `GAMMA_PLUS` points are checked against the coupling too:

    ```python
    >>> sc = surface_constants()
    >>> y = eval_surface(
    ...     SurfaceKind.GAMMA_PLUS, 1.0, [sc.t1_star, sc.t2_star]
    ... )
    >>> abs(y[2]) < 1e-9
    True

    ```
    """
    if not a >= 0:
        raise ParamOutOfRange(f"a must be >= 0, given {a!r}", a=a)
    sc = surface_constants()
    _check_params(surface, params, sc)
    if surface is SurfaceKind.GAMMA_PLUS:
        t1, t2 = params
        if abs(sc.log_f(t1) - sc.log_f(t2)) > 1e-8:
            raise ParamOutOfRange(
                f"GammaPlus needs f(t1) == f(t2), given {t1!r}, {t2!r}",
                surface=surface.value,
                params=tuple(params),
            )
    return _unit_point(surface, params) * a ** np.arange(1, 4)
