"""
Brute-force minimization of the family cost over the attenuation rate.
"""

from __future__ import annotations
import dataclasses
from typing import Optional

import numpy as np
from scipy import optimize

import splatlog

from chatterplan.chattering import family_point, sweep
from chatterplan.errors import ParamOutOfRange
from chatterplan.typings import FloatArray

__all__ = ["AlphaOptimum", "alpha_grid_optimum"]

log = splatlog.get_logger(__name__)

MAX_GRID_STEP = 1e-3


@dataclasses.dataclass(frozen=True)
class AlphaOptimum:
    alpha: float
    j: float
    grid: FloatArray
    costs: FloatArray

    @property
    def is_unimodal(self) -> bool:
        """Costs fall strictly up to the grid minimum and rise after it."""
        k = int(np.argmin(self.costs))
        steps = np.diff(self.costs)
        return bool(np.all(steps[:k] < 0.0) and np.all(steps[k:] > 0.0))


def alpha_grid_optimum(
    grid: Optional[FloatArray] = None, tol: float = 1e-10
) -> AlphaOptimum:
    """
    Evaluate the family on `grid`, then refine the best grid point by golden
    section between its neighbours.

    ##### Examples #####

    ```python
    >>> best = alpha_grid_optimum()
    >>> abs(best.alpha - 0.1660687) < 1e-5
    True
    >>> abs(best.j - 1.3452202) < 1e-6
    True
    >>> best.is_unimodal
    True

    >>> alpha_grid_optimum(np.linspace(0.0, 0.5, 11))
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: grid step must be at most 0.001,
        given 0.05

    ```
    """
    grid = (
        np.linspace(0.0, 0.5, 501)
        if grid is None
        else np.asarray(grid, dtype=np.float64)
    )
    step = float(np.max(np.diff(grid)))
    if step > MAX_GRID_STEP * (1.0 + 1e-9):
        raise ParamOutOfRange(
            f"grid step must be at most {MAX_GRID_STEP!r},\n"
            f"    given {round(step, 12)!r}",
            step=step,
        )

    points = sweep(grid)
    costs = np.array([p.j for p in points])
    k = int(np.argmin(costs))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    seed = (points[k].beta1, points[k].beta2)

    def cost(alpha: float) -> float:
        return family_point(float(alpha), seed=seed).j

    if 0 < k < len(grid) - 1:
        result = optimize.minimize_scalar(
            cost, bracket=(lo, grid[k], hi), method="golden", tol=tol
        )
        alpha, j = float(result.x), float(result.fun)
    else:
        alpha, j = float(grid[k]), float(costs[k])

    log.info("Grid optimum", alpha=alpha, j=j, grid_alpha=float(grid[k]))
    return AlphaOptimum(alpha=alpha, j=j, grid=grid, costs=costs)
