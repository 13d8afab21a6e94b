"""
Maps between scaled trajectories (order 3, `y3 >= 0`) and physical ones
(order 4, `x3 <= M3`) of the velocity-limited sub-problem:

    u(t)  = -M0 v(t / s)                    s = -x01 / M0
    x1(t) = x01 y1(t / s)
    x2(t) = -(x01**2 / M0) y2(t / s)
    x3(t) = M3 + (x01**3 / M0**2) y3(t / s)
    x4(t) = x04 + M3 t - (x01**4 / M0**3) Y(t / s)

with `Y` the running integral of `y3` from `tau = 0`. Scaled trajectories are
expected to start at `tau = 0`.
"""

from __future__ import annotations

import numpy as np

from chatterplan.dynamics import Trajectory, states_at
from chatterplan.errors import OrderMismatch

from .problem7 import Problem7Spec

__all__ = ["map_scaled_to_physical", "map_physical_to_scaled"]


def _check_order(traj: Trajectory, order: int) -> None:
    if traj.order != order:
        raise OrderMismatch(
            f"expected a trajectory of order {order}, given {traj.order}",
            order=order,
            given=traj.order,
        )


def map_scaled_to_physical(spec: Problem7Spec, traj: Trajectory) -> Trajectory:
    """
    ##### Examples #####

    ```python
    >>> from chatterplan.core import PiecewiseControl
    >>> from chatterplan.dynamics import sample

    >>> spec = Problem7Spec(m0=1.0, m3=1.0, x01=-2.0, x04=3.0, xf4=100.0)
    >>> pc = PiecewiseControl.of([(1.0, -1.0)])
    >>> y_traj = sample([1.0, 0.0, 0.0], pc, 0.5)
    >>> x_traj = map_scaled_to_physical(spec, y_traj)
    >>> np.allclose(x_traj.states[0], [-2.0, 0.0, 1.0, 3.0])
    True
    >>> x_traj.controls
    array([1., 1., 1.])
    >>> x_traj.times
    array([0., 1., 2.])

    ```

    Mapping back recovers the scaled trajectory:

    ```python
    >>> back = map_physical_to_scaled(spec, x_traj)
    >>> float(np.max(np.abs(back.states - y_traj.states))) <= 1e-12
    True

    ```
    """
    _check_order(traj, 3)
    s = spec.time_scale
    factors = spec.state_factors()
    augmented = np.append(traj.x0, 0.0)
    running = states_at(augmented, traj.control, traj.times)[:, 3]
    times = s * traj.times
    y = traj.states
    states = np.column_stack(
        [
            factors[0] * y[:, 0],
            factors[1] * y[:, 1],
            spec.m3 + factors[2] * y[:, 2],
            spec.x04 + spec.m3 * times + factors[3] * running,
        ]
    )
    return Trajectory(
        x0=np.array(
            [
                factors[0] * traj.x0[0],
                factors[1] * traj.x0[1],
                spec.m3 + factors[2] * traj.x0[2],
                spec.x04 + spec.m3 * s * traj.control.t0,
            ]
        ),
        control=traj.control.scaled(time=s, level=-spec.m0),
        times=times,
        states=states,
        controls=-spec.m0 * traj.controls,
        cost=traj.cost,
    )


def map_physical_to_scaled(spec: Problem7Spec, traj: Trajectory) -> Trajectory:
    _check_order(traj, 4)
    s = spec.time_scale
    factors = spec.state_factors()
    x = traj.states
    states = np.column_stack(
        [
            x[:, 0] / factors[0],
            x[:, 1] / factors[1],
            (x[:, 2] - spec.m3) / factors[2],
        ]
    )
    return Trajectory(
        x0=np.array(
            [
                traj.x0[0] / factors[0],
                traj.x0[1] / factors[1],
                (traj.x0[2] - spec.m3) / factors[2],
            ]
        ),
        control=traj.control.scaled(time=1.0 / s, level=-1.0 / spec.m0),
        times=traj.times / s,
        states=states,
        controls=-traj.controls / spec.m0,
        cost=traj.cost,
    )
