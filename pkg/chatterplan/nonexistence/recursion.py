"""
Junction-time recursion for a fourth-order chain chattering against the
acceleration limit.

Between junctions the control would be `-M0, +M0, -M0` in quarters `tau_i`,
`2 tau_i`, `tau_i`. Uniqueness of the optimal control forces consecutive
quarters to satisfy `fc(tau_{i+2}; tau_i, tau_{i+1}) = 0` with

    fc(xi; xi1, xi2) = (xi1**2 - xi2**2) xi**2
                       + (xi1**3 + 2 xi1**2 xi2 - xi2**3) xi
                       - xi1**3 xi2 - 2 xi1**2 xi2**2 + xi2**4

In terms of `r_i = 1 - tau_{i+1} / tau_i` the same recursion reads

    r_{i+1}**2 - a_i r_{i+1} + 1 = 0,    a_i = 3 + 1 / (r_i (1 - r_i))

`i r_i` tends to `1/4`, so the quarters shrink too slowly to sum to a finite
time and the junctions never accumulate.
"""

from __future__ import annotations
import csv
import dataclasses
import math
from typing import IO, Iterator

import numpy as np

import splatlog

from chatterplan.errors import OrderViolated, ParamOutOfRange
from chatterplan.typings import FloatArray

__all__ = [
    "TAU_FORM_STEPS",
    "fc",
    "next_tau",
    "next_r",
    "RecursionState",
    "run_recursion",
    "RECURSION_HEADER",
    "write_recursion_csv",
]

log = splatlog.get_logger(__name__)

# Steps taken with `next_tau` before switching to the `r` form.
TAU_FORM_STEPS = 100


def fc(xi, xi1, xi2):
    """
    ##### Examples #####

    ```python
    >>> fc(1.0, 1.0, 1.0)
    0.0
    >>> fc(0.0, 2.0, 1.0) == -(2.0**3) * 1.0 - 2.0 * 4.0 * 1.0 + 1.0
    True

    ```

    At `xi = xi1` it factors:

    ```python
    >>> a, b = 1.3, 0.4
    >>> abs(fc(a, a, b) - (a - b) * (2 * a - b) * (a + b) ** 2) < 1e-12
    True

    ```
    """
    return (
        (xi1**2 - xi2**2) * xi**2
        + (xi1**3 + 2.0 * xi1**2 * xi2 - xi2**3) * xi
        - xi1**3 * xi2
        - 2.0 * xi1**2 * xi2**2
        + xi2**4
    )


def _check_decreasing(tau_i: float, tau_ip1: float) -> None:
    if not 0.0 < tau_ip1 < tau_i:
        raise OrderViolated(
            f"expected 0 < tau_(i+1) < tau_i, given {tau_i!r}, {tau_ip1!r}",
            tau_i=tau_i,
            tau_ip1=tau_ip1,
        )


def next_tau(tau_i: float, tau_ip1: float) -> float:
    """
    The positive root of `fc(.; tau_i, tau_ip1)`. The leading and linear
    coefficients are positive and the constant one negative, so there is
    exactly one.

    ##### Examples #####

    ```python
    >>> from scipy import optimize
    >>> x = next_tau(1.0, 0.9)
    >>> 0.0 < x < 0.9
    True
    >>> bisected = optimize.bisect(fc, 0.0, 0.9, args=(1.0, 0.9), xtol=1e-15)
    >>> abs(x - bisected) < 1e-12
    True

    >>> next_tau(1.0, 1.1)
    Traceback (most recent call last):
      ...
    chatterplan.errors.OrderViolated: expected 0 < tau_(i+1) < tau_i, given
        1.0, 1.1

    ```
    """
    _check_decreasing(tau_i, tau_ip1)
    a = tau_i**2 - tau_ip1**2
    b = tau_i**3 + 2.0 * tau_i**2 * tau_ip1 - tau_ip1**3
    c = -(tau_i**3) * tau_ip1 - 2.0 * tau_i**2 * tau_ip1**2 + tau_ip1**4
    return -2.0 * c / (b + math.sqrt(b * b - 4.0 * a * c))


def next_r(r: float) -> float:
    """
    The smaller root of `x**2 - a x + 1`.

    ##### Examples #####

    ```python
    >>> abs(next_r(0.5) - (7.0 - math.sqrt(45.0)) / 2.0) < 1e-15
    True

    ```
    """
    a = 3.0 + 1.0 / (r * (1.0 - r))
    return 2.0 / (a + math.sqrt(a * a - 4.0))


@dataclasses.dataclass(frozen=True)
class RecursionState:
    """
    `taus[i - 1]` is `tau_i` and `rs[i - 1]` is `r_i`; there is one fewer
    `r` than `tau`.
    """

    taus: FloatArray
    rs: FloatArray

    @property
    def indices(self) -> FloatArray:
        return np.arange(1, len(self.rs) + 1, dtype=np.float64)

    def a(self) -> FloatArray:
        return 3.0 + 1.0 / (self.rs * (1.0 - self.rs))

    def i_times_r(self) -> FloatArray:
        return self.indices * self.rs

    def raabe(self) -> FloatArray:
        """`i (tau_i / tau_{i+1} - 1)`, from `r_i` to keep the digits."""
        return self.indices * self.rs / (1.0 - self.rs)

    def partial_sums(self) -> FloatArray:
        return np.cumsum(self.taus)

    def doubling_increments(self) -> FloatArray:
        """`S_{2N} - S_N` for `N = 1, 2, 4, ...`."""
        sums = self.partial_sums()
        out = []
        n = 1
        while 2 * n <= len(sums):
            out.append(sums[2 * n - 1] - sums[n - 1])
            n *= 2
        return np.array(out)

    def is_strictly_decreasing(self) -> bool:
        return bool(
            np.all(np.diff(self.taus) < 0.0) and np.all(np.diff(self.rs) < 0.0)
        )

    def rows(self) -> Iterator[tuple[int, float, float, float, float]]:
        i_r, raabe = self.i_times_r(), self.raabe()
        for i in range(len(self.rs)):
            yield (
                i + 1,
                float(self.taus[i]),
                float(self.rs[i]),
                float(i_r[i]),
                float(raabe[i]),
            )


def run_recursion(
    tau1: float,
    tau2: float,
    n_steps: int,
    tau_form_steps: int = TAU_FORM_STEPS,
) -> RecursionState:
    """
    `n_steps` quarters starting from `tau1, tau2`. The first `tau_form_steps`
    come from `next_tau`, the rest from `next_r`.

    ##### Examples #####

    ```python
    >>> state = run_recursion(1.0, 0.9, 100_000)
    >>> state.is_strictly_decreasing()
    True
    >>> abs(state.i_times_r()[-1] - 0.25) < 0.02 * 0.25
    True
    >>> abs(state.raabe()[-1] - 0.25) < 0.02 * 0.25
    True
    >>> bool(np.all(np.diff(state.doubling_increments()) > 0.0))
    True

    ```

    Both forms agree over a thousand steps:

    ```python
    >>> by_tau = run_recursion(1.0, 0.9, 1000, tau_form_steps=1000)
    >>> by_r = run_recursion(1.0, 0.9, 1000, tau_form_steps=0)
    >>> float(np.max(np.abs(by_tau.taus / by_r.taus - 1.0))) < 1e-10
    True

    >>> run_recursion(1.0, 0.9, 5)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: n_steps must be at least 10, given 5

    ```
    """
    _check_decreasing(tau1, tau2)
    if n_steps < 10:
        raise ParamOutOfRange(
            f"n_steps must be at least 10, given {n_steps}", n_steps=n_steps
        )
    taus = np.empty(n_steps)
    rs = np.empty(n_steps - 1)
    taus[0], taus[1] = tau1, tau2
    rs[0] = 1.0 - tau2 / tau1
    for i in range(2, n_steps):
        if i < tau_form_steps:
            taus[i] = next_tau(taus[i - 2], taus[i - 1])
            rs[i - 1] = 1.0 - taus[i] / taus[i - 1]
        else:
            rs[i - 1] = next_r(rs[i - 2])
            taus[i] = taus[i - 1] * (1.0 - rs[i - 1])

    state = RecursionState(taus=taus, rs=rs)
    log.info(
        "Ran junction recursion",
        steps=n_steps,
        i_times_r=float(state.i_times_r()[-1]),
        raabe=float(state.raabe()[-1]),
        partial_sum=float(state.partial_sums()[-1]),
    )
    return state


RECURSION_HEADER = ("i", "tau_i", "r_i", "i_times_r_i", "raabe")


def write_recursion_csv(state: RecursionState, fp: IO[str]) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(RECURSION_HEADER)
    for i, *values in state.rows():
        writer.writerow([i, *(repr(v) for v in values)])
