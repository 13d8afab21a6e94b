from __future__ import annotations
import csv
import dataclasses
from typing import IO, Optional

import numpy as np

from chatterplan.core import PiecewiseControl, as_state
from chatterplan.errors import ParamOutOfRange
from chatterplan.typings import FloatArray, VectorLike

from .propagate import states_at

__all__ = ["Trajectory", "sample", "write_csv", "csv_header"]


@dataclasses.dataclass(frozen=True)
class Trajectory:
    """
    A sampled view of a schedule: `states[i]` is the state at `times[i]`
    and `controls[i]` the (right-continuous) level there.

    `cost` is whatever the producer decided the objective is, or `None`.
    """

    x0: FloatArray
    control: PiecewiseControl
    times: FloatArray
    states: FloatArray
    controls: FloatArray
    cost: Optional[float] = None

    @property
    def order(self) -> int:
        return self.states.shape[1]

    @property
    def t_f(self) -> float:
        return self.control.t_end

    @property
    def final_state(self) -> FloatArray:
        return self.states[-1]

    def component(self, k: int) -> FloatArray:
        """Samples of `x_k`, with `k == 0` meaning the control."""
        if k == 0:
            return self.controls
        return self.states[:, k - 1]

    def to_json_encodable(self) -> dict:
        return {
            "t_f": self.t_f,
            "cost": self.cost,
            "samples": len(self.times),
        }


def sample(
    x0: VectorLike,
    pc: PiecewiseControl,
    dt: float,
    *,
    cost: Optional[float] = None,
) -> Trajectory:
    """
    Sample `pc` from `x0` every `dt`, plus at every segment boundary.

    ##### Examples #####

    ```python
    >>> from chatterplan.core import PiecewiseControl
    >>> pc = PiecewiseControl.of([(1.0, 1.0)])

    >>> traj = sample([0.0, 0.0, 0.0], pc, 0.5)
    >>> traj.times
    array([0. , 0.5, 1. ])
    >>> traj.final_state
    array([1.        , 0.5       , 0.16666667])
    >>> traj.controls
    array([1., 1., 1.])

    ```

    With `dt` as long as the whole schedule only the boundaries remain.

    ```python
    >>> two = PiecewiseControl.of([(1.0, 1.0), (2.0, -1.0)])
    >>> sample([0.0, 0.0], two, 3.0).times
    array([0., 1., 3.])

    >>> sample([0.0, 0.0], two, 0.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: dt must be positive, given 0.0

    ```
    """
    if not dt > 0:
        raise ParamOutOfRange(f"dt must be positive, given {dt!r}", dt=dt)
    x = as_state(x0)
    grid = pc.t0 + np.arange(0.0, pc.duration, dt)
    times = np.unique(np.concatenate((grid, pc.boundaries())))
    states = states_at(x, pc, times)
    if len(pc):
        index = np.clip(
            np.searchsorted(pc.boundaries(), times, side="right") - 1,
            0,
            len(pc) - 1,
        )
        controls = pc.levels()[index]
    else:
        controls = np.zeros_like(times)
    return Trajectory(
        x0=x,
        control=pc,
        times=times,
        states=states,
        controls=controls,
        cost=cost,
    )


def csv_header(order: int) -> list[str]:
    return ["t", "u", *(f"x{k}" for k in range(1, order + 1))]


def write_csv(traj: Trajectory, fp: IO[str]) -> None:
    """
    One row per sample, `t,u,x1,...,xn`. Floats go out as `repr`, which
    round-trips exactly.

    ##### Examples #####

    ```python
    >>> import io
    >>> from chatterplan.core import PiecewiseControl

    >>> buffer = io.StringIO()
    >>> write_csv(
    ...     sample([0.0, 0.0], PiecewiseControl.of([(1.0, 1.0)]), 1.0),
    ...     buffer,
    ... )
    >>> print(buffer.getvalue(), end="")
    t,u,x1,x2
    0.0,1.0,0.0,0.0
    1.0,1.0,1.0,0.5

    ```
    """
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(csv_header(traj.order))
    for t, u, x in zip(traj.times, traj.controls, traj.states):
        writer.writerow([repr(float(v)) for v in (t, u, *x)])
