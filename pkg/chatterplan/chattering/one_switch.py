"""
Why a cycle needs two switches.

A cycle with at most one switch, first level `v0` and the last `t_sw` of the
cycle at `-v0`, would have to satisfy

    1 + v0 (T - 2 t_sw) = alpha
    T + (v0 / 2) (T**2 - 2 t_sw**2) = 0
    T**2 / 2 + (v0 / 6) (T**3 - 2 t_sw**3) = 0

with `0 <= t_sw <= T`, `T > 0` and `alpha` in `[0, 1)`. With `alpha = 0`
these are the conditions for reaching the origin in one go with a single
switch. The only solution sits at `alpha = 1`, `(T, t_sw) = (4, 2)`,
outside the domain, and the residual grows like `1 - alpha` away from it.

This module scans the domain and reports the smallest normalized residual it
can find. The normalization divides the `k`-th equation by `1 + T**(k - 1)`.
"""

from __future__ import annotations
import dataclasses

import numpy as np
from scipy import optimize

import splatlog

from chatterplan.typings import FloatArray

__all__ = [
    "EMPTINESS_THRESHOLD",
    "ResidualMinimum",
    "OneSwitchReport",
    "one_switch_residuals",
    "check_infeasible_one_switch",
]

log = splatlog.get_logger(__name__)

EMPTINESS_THRESHOLD = 1e-3


@dataclasses.dataclass(frozen=True)
class ResidualMinimum:
    norm: float
    v0: int
    cycle_time: float
    switch_fraction: float
    alpha: float


@dataclasses.dataclass(frozen=True)
class OneSwitchReport:
    """
    `to_origin` is the `alpha = 0` system, `attenuated` lets `alpha` range
    over `[0, alpha_max]`.
    """

    to_origin: ResidualMinimum
    attenuated: ResidualMinimum
    threshold: float = EMPTINESS_THRESHOLD

    @property
    def is_empty(self) -> bool:
        return min(self.to_origin.norm, self.attenuated.norm) >= self.threshold


def one_switch_residuals(v0, cycle_time, switch_fraction, alpha) -> FloatArray:
    """
    Normalized residuals, stacked along the first axis. Broadcasts.

    ##### Examples #####

    ```python
    >>> one_switch_residuals(-1, 4.0, 0.5, 1.0)
    array([0., 0., 0.])

    ```
    """
    T = np.asarray(cycle_time, dtype=np.float64)
    t_sw = switch_fraction * T
    r1 = 1.0 + v0 * (T - 2.0 * t_sw) - alpha
    r2 = T + 0.5 * v0 * (T**2 - 2.0 * t_sw**2)
    r3 = 0.5 * T**2 + v0 * (T**3 - 2.0 * t_sw**3) / 6.0
    return np.stack([r1 / 2.0, r2 / (1.0 + T), r3 / (1.0 + T**2)])


def _scan(
    v0: int,
    times: FloatArray,
    fractions: FloatArray,
    alphas: FloatArray,
) -> ResidualMinimum:
    T, f, a = np.meshgrid(times, fractions, alphas, indexing="ij")
    norm = np.linalg.norm(one_switch_residuals(v0, T, f, a), axis=0)
    index = np.unravel_index(np.argmin(norm), norm.shape)
    seed = np.array([T[index], f[index], a[index]])

    lower = np.array([times[0], 0.0, alphas[0]])
    upper = np.array([times[-1], 1.0, alphas[-1]])
    best = ResidualMinimum(float(norm[index]), v0, *(float(x) for x in seed))
    if np.all(upper > lower):
        refined = optimize.least_squares(
            lambda x: one_switch_residuals(v0, *x),
            seed,
            bounds=(lower, upper),
        )
        refined_norm = float(np.linalg.norm(refined.fun))
        if refined_norm < best.norm:
            best = ResidualMinimum(
                refined_norm, v0, *(float(x) for x in refined.x)
            )
    else:
        # Fixed alpha: refine the other two.
        refined = optimize.least_squares(
            lambda x: one_switch_residuals(v0, x[0], x[1], alphas[0]),
            seed[:2],
            bounds=(lower[:2], upper[:2]),
        )
        refined_norm = float(np.linalg.norm(refined.fun))
        if refined_norm < best.norm:
            best = ResidualMinimum(
                refined_norm,
                v0,
                float(refined.x[0]),
                float(refined.x[1]),
                float(alphas[0]),
            )
    return best


def check_infeasible_one_switch(
    resolution: int = 200,
    max_cycle_time: float = 20.0,
    alpha_max: float = 0.9,
) -> OneSwitchReport:
    """
    Grid scan plus bounded least-squares refinement over both signs of `v0`.

    ##### Examples #####

    ```python
    >>> report = check_infeasible_one_switch(resolution=100)
    >>> report.is_empty
    True
    >>> report.to_origin.norm > 0.01
    True

    ```
    """
    times = np.linspace(
        max_cycle_time / resolution, max_cycle_time, resolution
    )
    fractions = np.linspace(0.0, 1.0, resolution + 1)
    alphas = np.linspace(0.0, alpha_max, max(2, resolution // 4) + 1)

    to_origin = min(
        (_scan(v0, times, fractions, np.zeros(1)) for v0 in (-1, 1)),
        key=lambda m: m.norm,
    )
    attenuated = min(
        (_scan(v0, times, fractions, alphas) for v0 in (-1, 1)),
        key=lambda m: m.norm,
    )
    report = OneSwitchReport(to_origin=to_origin, attenuated=attenuated)
    log.info(
        "Scanned one-switch cycles",
        to_origin=to_origin.norm,
        attenuated=attenuated.norm,
        empty=report.is_empty,
    )
    return report
