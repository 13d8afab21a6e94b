"""
Mesh dumps of the switching surfaces for external plotting.
"""

from __future__ import annotations
import csv
import dataclasses
from typing import IO, Iterable, Optional, Sequence

import numpy as np

from chatterplan.typings import FloatArray

from .parameterization import (
    GAMMA_F_T_MAX,
    SurfaceKind,
    coupled_t1,
    eval_surface,
    surface_constants,
)

__all__ = [
    "MESH_HEADER",
    "MeshRow",
    "default_params",
    "mesh",
    "write_mesh_csv",
]

MESH_HEADER = ("surface", "a", "t1", "t2", "y1", "y2", "y3")


@dataclasses.dataclass(frozen=True)
class MeshRow:
    """
    One surface point. One-parameter surfaces put their `t` in `t1` and
    leave `t2` empty.
    """

    surface: SurfaceKind
    a: float
    t1: float
    t2: Optional[float]
    y: FloatArray

    def csv_row(self) -> list[str]:
        return [
            self.surface.value,
            repr(float(self.a)),
            repr(float(self.t1)),
            "" if self.t2 is None else repr(float(self.t2)),
            *(repr(float(v)) for v in self.y),
        ]


def default_params(surface: SurfaceKind, count: int = 50) -> FloatArray:
    """
    Evenly spaced free parameters across the surface's box: `t2` for
    `GAMMA_PLUS`, `t` otherwise.
    """
    sc = surface_constants()
    if surface is SurfaceKind.GAMMA_PLUS:
        return np.linspace(sc.t2_star, sc.r_star, count)
    if surface is SurfaceKind.GAMMA_MINUS:
        return np.linspace(0.0, sc.r_star, count)
    return np.linspace(0.0, GAMMA_F_T_MAX, count)


def mesh(
    surface: SurfaceKind,
    a_values: Iterable[float],
    params: Optional[Sequence[float]] = None,
) -> list[MeshRow]:
    """
    Points of `surface` over the product of `a_values` and `params`.

    ##### Examples #####

    ```python
    >>> rows = mesh(SurfaceKind.GAMMA_F, [1.0, 2.0], [0.0, 3.0])
    >>> len(rows)
    4
    >>> rows[1].csv_row()
    ['GammaF', '1.0', '3.0', '', '-2.0', '1.5', '0.0']

    >>> sc = surface_constants()
    >>> (row,) = mesh(SurfaceKind.GAMMA_PLUS, [1.0], [sc.t2_star])
    >>> abs(row.t1 - sc.t1_star) < 1e-9
    True

    ```
    """
    sc = surface_constants()
    free = default_params(surface) if params is None else params
    rows = []
    for a in a_values:
        for p in free:
            p = float(p)
            if surface is SurfaceKind.GAMMA_PLUS:
                t1, t2 = coupled_t1(p, sc), p
                y = eval_surface(surface, float(a), (t1, t2))
            else:
                t1, t2 = p, None
                y = eval_surface(surface, float(a), (p,))
            rows.append(MeshRow(surface, float(a), t1, t2, y))
    return rows


def write_mesh_csv(rows: Iterable[MeshRow], fp: IO[str]) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(MESH_HEADER)
    for row in rows:
        writer.writerow(row.csv_row())
