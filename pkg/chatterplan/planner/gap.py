"""
How much the greedy rest-to-rest plan loses against the optimal one, over a
grid of two limits with the rest held fixed.
"""

from __future__ import annotations
import csv
import dataclasses
from typing import IO, Any, Optional, Sequence

import numpy as np

import splatlog

from chatterplan.chattering import solve_constants
from chatterplan.core import Bounds, ChatteringConstants
from chatterplan.errors import InfeasibleError, ParamOutOfRange
from chatterplan.typings import FloatArray

from .rest_to_rest import RestToRestSpec, choose_entry

__all__ = ["GapSurface", "gap_surface", "GAP_HEADER", "write_gap_csv"]

log = splatlog.get_logger(__name__)

GAP_HEADER = ("first", "second", "t_f_opt", "t_f_mim", "gap", "relative_gap")


@dataclasses.dataclass(frozen=True)
class GapSurface:
    """
    `t_f_opt[i, j]` and `t_f_mim[i, j]` are for `M_{axes[0]} = first[i]` and
    `M_{axes[1]} = second[j]`. Cells where the move cannot reach cruise hold
    NaN; every other failure propagates.
    """

    axes: tuple[int, int]
    first: FloatArray
    second: FloatArray
    t_f_opt: FloatArray
    t_f_mim: FloatArray

    @property
    def gap(self) -> FloatArray:
        return self.t_f_mim - self.t_f_opt

    @property
    def relative_gap(self) -> FloatArray:
        return self.gap / self.t_f_opt

    def rows(self):
        gap, relative = self.gap, self.relative_gap
        for i, a in enumerate(self.first):
            for j, b in enumerate(self.second):
                yield (
                    float(a),
                    float(b),
                    float(self.t_f_opt[i, j]),
                    float(self.t_f_mim[i, j]),
                    float(gap[i, j]),
                    float(relative[i, j]),
                )


def gap_surface(
    bounds: Any,
    axes: tuple[int, int],
    first: Sequence[float],
    second: Sequence[float],
    *,
    start: Optional[float] = None,
    end: Optional[float] = None,
    tol: float = 1e-8,
    c: Optional[ChatteringConstants] = None,
) -> GapSurface:
    """
    ##### Examples #####

    ```python
    >>> surface = gap_surface(
    ...     [1, 1, 1.5, 4, 15], (0, 1), [0.9, 1.0], [1.0, 1.2]
    ... )
    >>> surface.gap.shape
    (2, 2)
    >>> bool(np.all(surface.gap > 0.0))
    True
    >>> abs(surface.t_f_mim[1, 0] - 38.0 / 3.0) < 1e-9
    True

    >>> gap_surface([1, 1, 1.5, 4, 15], (0, 5), [1.0], [1.0])
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: axes must be two different indices in
        0 .. 3, given (0, 5)

    ```

    A move too short to reach cruise leaves its cell NaN:

    ```python
    >>> short = gap_surface(
    ...     [1, 1, 1.5, 4, 15], (3, 2), [4.0, 8.0], [1.5], start=-15, end=15
    ... )
    >>> np.isnan(short.t_f_opt[:, 0]).tolist()
    [False, True]

    ```
    """
    base = Bounds.cast(bounds)
    a, b = axes
    if a == b or not (0 <= a <= 3 and 0 <= b <= 3):
        raise ParamOutOfRange(
            "axes must be two different indices in 0 .. 3,\n"
            f"    given {tuple(axes)!r}",
            axes=tuple(axes),
        )
    c = solve_constants() if c is None else c
    first = np.asarray(first, dtype=np.float64)
    second = np.asarray(second, dtype=np.float64)
    t_f_opt = np.full((len(first), len(second)), np.nan)
    t_f_mim = np.full_like(t_f_opt, np.nan)

    for i, v in enumerate(first):
        for j, w in enumerate(second):
            try:
                spec = RestToRestSpec.of(
                    base.replace(a, v).replace(b, w), start, end
                )
                choice = choose_entry(spec, tol, c)
            except InfeasibleError as error:
                log.debug(
                    "No plan for grid cell",
                    first=float(v),
                    second=float(w),
                    error=error,
                )
                continue
            t_f_opt[i, j] = choice.t_f_opt
            t_f_mim[i, j] = choice.t_f_mim

    missing = int(np.count_nonzero(np.isnan(t_f_opt)))
    if missing:
        log.info("Gap surface has empty cells", missing=missing)
    return GapSurface(
        axes=(a, b),
        first=first,
        second=second,
        t_f_opt=t_f_opt,
        t_f_mim=t_f_mim,
    )


def write_gap_csv(surface: GapSurface, fp: IO[str]) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(GAP_HEADER)
    for row in surface.rows():
        writer.writerow(repr(x) for x in row)
