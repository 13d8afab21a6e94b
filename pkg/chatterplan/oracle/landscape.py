"""
Grid scans of residual systems, for certifying that a system has exactly one
root in its domain or none at all.

The scan is dense and dumb: evaluate the residual norm on a grid, take the
local minima, polish each with bounded least squares, keep what lands on a
root. None of the main solvers' seeding or continuation is involved.
"""

from __future__ import annotations
import dataclasses
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import ndimage, optimize

import splatlog

from chatterplan.chattering import (
    beta3_from,
    family_residuals,
    in_feasible_box,
    junction_residuals,
    one_switch_residuals,
    reduced_residuals,
)
from chatterplan.surfaces import gamma_plus_y3, surface_constants
from chatterplan.typings import FloatArray

__all__ = [
    "LandscapeSystem",
    "Landscape",
    "LandscapeMinimum",
    "landscape",
    "residual_landscape",
    "find_roots",
    "count_roots",
    "ROOT_THRESHOLD",
]

log = splatlog.get_logger(__name__)

ROOT_THRESHOLD = 1e-8

# Local minima polished per scan, best first.
MAX_POLISHED = 24


class LandscapeSystem(Enum):
    """
    | Member       | Unknowns                   | Expect        |
    | ------------ | -------------------------- | ------------- |
    | `CONSTANTS`  | `alpha, beta1, beta2`      | one root      |
    | `JUNCTION`   | `alpha, beta1, beta2, beta3` | one root    |
    | `TO_ORIGIN`  | `T, t_sw / T` (both `v0`)  | no root       |
    | `ONE_SWITCH` | `T, t_sw / T, alpha`       | no root       |
    | `GREEDY`     | `beta1, beta2` at `alpha = 0` | one root   |
    | `COUPLING`   | `t1, t2` on `GAMMA_PLUS`   | one root      |
    """

    CONSTANTS = "constants"
    JUNCTION = "junction"
    TO_ORIGIN = "to_origin"
    ONE_SWITCH = "one_switch"
    GREEDY = "greedy"
    COUPLING = "coupling"


@dataclasses.dataclass(frozen=True)
class Landscape:
    """
    `residuals` takes one array per unknown (broadcasting) and stacks the
    residuals along the first axis. `admissible` says which points count.
    """

    system: LandscapeSystem
    residuals: Callable[..., FloatArray]
    lower: FloatArray
    upper: FloatArray
    admissible: Callable[..., FloatArray]


@dataclasses.dataclass(frozen=True)
class LandscapeMinimum:
    norm: float
    argmin: FloatArray


def _constants_admissible(alpha, beta1, beta2):
    with np.errstate(divide="ignore", invalid="ignore"):
        beta3 = beta3_from(alpha, beta1, beta2)
    return (beta1 < beta2) & (beta3 > 1.0)


def _all(*xs):
    return np.ones(np.broadcast(*xs).shape, dtype=bool)


def _one_switch(v0: float, alpha_fixed: Optional[float]):
    if alpha_fixed is None:
        return lambda T, f, a: one_switch_residuals(v0, T, f, a)
    return lambda T, f: one_switch_residuals(v0, T, f, alpha_fixed)


def landscape(
    system: LandscapeSystem, v0: float = -1.0
) -> Landscape:
    """
    Default domain for `system`. `v0` picks the first level for the
    one-switch systems.
    """
    if system is LandscapeSystem.CONSTANTS:
        return Landscape(
            system,
            lambda a, b1, b2: reduced_residuals((a, b1, b2)),
            np.array([0.01, 0.01, 0.01]),
            np.array([0.99, 0.99, 0.99]),
            _constants_admissible,
        )
    if system is LandscapeSystem.JUNCTION:
        return Landscape(
            system,
            lambda a, b1, b2, b3: junction_residuals((a, b1, b2, b3)),
            np.array([0.01, 0.01, 0.01, 1.0]),
            np.array([0.99, 0.99, 0.99, 2.0]),
            lambda a, b1, b2, b3: (b1 < b2) & (b3 > 1.0),
        )
    if system is LandscapeSystem.TO_ORIGIN:
        return Landscape(
            system,
            _one_switch(v0, 0.0),
            np.array([0.05, 0.0]),
            np.array([20.0, 1.0]),
            _all,
        )
    if system is LandscapeSystem.ONE_SWITCH:
        # The only root is at alpha = 1; stay clear of it.
        return Landscape(
            system,
            _one_switch(v0, None),
            np.array([0.05, 0.0, 0.0]),
            np.array([20.0, 1.0, 0.9]),
            _all,
        )
    if system is LandscapeSystem.GREEDY:
        return Landscape(
            system,
            lambda b1, b2: family_residuals((b1, b2), 0.0),
            np.array([0.01, 0.01]),
            np.array([0.99, 0.99]),
            lambda b1, b2: b1 < b2,
        )
    sc = surface_constants()
    return Landscape(
        system,
        lambda t1, t2: np.stack(
            [
                sc.log_f(t1) - sc.log_f(t2),
                gamma_plus_y3(t1, t2) / (1.0 + t1**3),
            ]
        ),
        np.array([sc.r_star, 0.5]),
        np.array([40.0, sc.r_star]),
        lambda t1, t2: t2 <= t1,
    )


def _grid(scape: Landscape, resolution: int):
    axes = [
        np.linspace(lo, hi, resolution)
        for lo, hi in zip(scape.lower, scape.upper)
    ]
    points = np.meshgrid(*axes, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        norm = np.linalg.norm(scape.residuals(*points), axis=0)
        ok = scape.admissible(*points) & np.isfinite(norm)
    return points, np.where(ok, norm, np.inf)


def _polish(scape: Landscape, seed: FloatArray) -> LandscapeMinimum:
    def fun(x):
        with np.errstate(divide="ignore", invalid="ignore"):
            r = scape.residuals(*x)
        return np.nan_to_num(r, nan=1e6, posinf=1e6, neginf=-1e6)

    result = optimize.least_squares(
        fun, seed, bounds=(scape.lower, scape.upper), xtol=1e-15, ftol=1e-15
    )
    return LandscapeMinimum(float(np.linalg.norm(result.fun)), result.x)


def _local_minima(scape: Landscape, resolution: int) -> list[FloatArray]:
    points, norm = _grid(scape, resolution)
    finite = np.isfinite(norm)
    filled = np.where(finite, norm, np.finfo(float).max)
    lowest = ndimage.minimum_filter(filled, size=3, mode="nearest")
    is_min = (filled == lowest) & finite
    indices = np.argwhere(is_min)
    order = np.argsort(norm[tuple(indices.T)])[:MAX_POLISHED]
    return [
        np.array([p[tuple(indices[k])] for p in points]) for k in order
    ]


def residual_landscape(
    system: LandscapeSystem,
    box: Optional[tuple[Sequence[float], Sequence[float]]] = None,
    resolution: int = 40,
    v0: Sequence[float] = (-1.0, 1.0),
) -> LandscapeMinimum:
    """
    Smallest residual norm over the domain, from the grid and then polished.
    For the one-switch systems both first levels are scanned.

    ##### Examples #####

    ```python
    >>> best = residual_landscape(LandscapeSystem.CONSTANTS)
    >>> best.norm < 1e-10
    True
    >>> abs(best.argmin[0] - 0.1660687) < 1e-6
    True

    >>> to_origin = residual_landscape(
    ...     LandscapeSystem.TO_ORIGIN, resolution=200
    ... )
    >>> to_origin.norm >= 1e-3
    True
    >>> one_switch = residual_landscape(
    ...     LandscapeSystem.ONE_SWITCH, resolution=60
    ... )
    >>> one_switch.norm >= 1e-3
    True

    >>> best = residual_landscape(LandscapeSystem.COUPLING)
    >>> [round(float(x), 3) for x in best.argmin]
    [16.867, 2.729]

    ```
    """
    levels = (
        v0
        if system in (LandscapeSystem.TO_ORIGIN, LandscapeSystem.ONE_SWITCH)
        else (-1.0,)
    )
    best: Optional[LandscapeMinimum] = None
    for level in levels:
        scape = landscape(system, level)
        if box is not None:
            scape = dataclasses.replace(
                scape,
                lower=np.asarray(box[0], dtype=np.float64),
                upper=np.asarray(box[1], dtype=np.float64),
            )
        for seed in _local_minima(scape, resolution)[:4]:
            found = _polish(scape, seed)
            if best is None or found.norm < best.norm:
                best = found
    assert best is not None
    log.info(
        "Scanned residual landscape",
        system=system.value,
        norm=best.norm,
        argmin=best.argmin.tolist(),
    )
    return best


def find_roots(
    system: LandscapeSystem,
    resolution: int = 30,
    threshold: float = ROOT_THRESHOLD,
) -> list[FloatArray]:
    """
    Distinct admissible roots reached from the grid's local minima.
    Roots closer than `1e-6` (relative) are the same root.
    """
    scape = landscape(system)
    roots: list[FloatArray] = []
    for seed in _local_minima(scape, resolution):
        found = _polish(scape, seed)
        if found.norm > threshold:
            continue
        if not bool(scape.admissible(*found.argmin)):
            continue
        if system is LandscapeSystem.CONSTANTS and not in_feasible_box(
            *found.argmin, beta3_from(*found.argmin)
        ):
            continue
        if system is LandscapeSystem.JUNCTION and not in_feasible_box(
            *found.argmin
        ):
            continue
        if any(
            np.allclose(found.argmin, r, rtol=1e-6, atol=1e-9) for r in roots
        ):
            continue
        roots.append(found.argmin)
    return roots


def count_roots(
    system: LandscapeSystem,
    resolution: int = 30,
    threshold: float = ROOT_THRESHOLD,
) -> int:
    """
    ##### Examples #####

    ```python
    >>> count_roots(LandscapeSystem.CONSTANTS)
    1
    >>> count_roots(LandscapeSystem.COUPLING)
    1
    >>> count_roots(LandscapeSystem.TO_ORIGIN)
    0

    ```
    """
    n = len(find_roots(system, resolution, threshold))
    log.info("Counted roots", system=system.value, roots=n)
    return n
