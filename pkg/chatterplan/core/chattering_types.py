"""
Value types for the chattering solution of the scaled velocity-limited
problem: the solved constants and the per-cycle costate arcs.
"""

from __future__ import annotations
import dataclasses

import numpy as np
from numpy.polynomial import Polynomial

from chatterplan.typings import FloatArray

__all__ = ["ChatteringConstants", "CostateArc"]


@dataclasses.dataclass(frozen=True)
class ChatteringConstants:
    """
    The solved chattering tuple.

    Cycle `i` (counting from 1) runs over `(tau_{i-1}, tau_i)` with length
    `alpha**(i - 1) * tau1`. Inside it the scaled control is `-1`, `+1`,
    `-1`, switching at fractions `beta1` and `beta2` of the cycle. `beta3`
    is the fraction (past the end of the cycle) where the third costate root
    sits.

    ##### Examples #####

    ```python
    >>> c = ChatteringConstants(
    ...     alpha=0.5, beta1=0.25, beta2=0.75, beta3=1.5,
    ...     tau1=2.0, tau_inf=4.0, j1=1.0, j_star=16.0 / 15.0,
    ... )
    >>> c.cycle_length(3)
    0.5
    >>> c.junction_time(2)
    3.0
    >>> c.betas
    (0.25, 0.75, 1.5)

    ```
    """

    alpha: float
    beta1: float
    beta2: float
    beta3: float
    tau1: float
    tau_inf: float
    j1: float
    j_star: float

    @property
    def betas(self) -> tuple[float, float, float]:
        return (self.beta1, self.beta2, self.beta3)

    def cycle_length(self, i: int) -> float:
        return self.alpha ** (i - 1) * self.tau1

    def junction_time(self, i: int) -> float:
        """`tau_i`, with `tau_0 = 0`."""
        return self.tau1 * (1.0 - self.alpha**i) / (1.0 - self.alpha)

    def remaining_time(self, i: int) -> float:
        """`tau_inf - tau_i`, computed without cancellation."""
        return self.alpha**i * self.tau_inf


@dataclasses.dataclass(frozen=True)
class CostateArc:
    """
    The costate on one chattering cycle.

    `p1` is the cubic `-(p0 / 6) * prod(tau - root_k)`; the other two follow
    from `p2 = -p1'` and `p3 = p1''`. All evaluation is in local cycle
    coordinates, so arcs deep into the chattering stay accurate.

    `mu` is the jump `p3(tau_end+) - p3(tau_end-)` at the end of the arc.
    """

    p0: float
    index: int
    tau_start: float
    tau_end: float
    length: float
    betas: tuple[float, float, float]
    mu: float

    @property
    def roots(self) -> tuple[float, float, float]:
        """
        Absolute times of the three roots of `p1`,
        `(1 - beta_k) tau_{i-1} + beta_k tau_i`.
        """
        return tuple(self.tau_start + b * self.length for b in self.betas)

    def p1_polynomial(self) -> Polynomial:
        """`p1` as a polynomial in the local time `s = tau - tau_start`."""
        local_roots = [b * self.length for b in self.betas]
        return Polynomial.fromroots(local_roots) * (-self.p0 / 6.0)

    def evaluate(self, tau: FloatArray | float) -> FloatArray:
        """
        Stack of `(p1, p2, p3)` at absolute times `tau`, shape `(3, ...)`.
        """
        s = np.asarray(tau, dtype=np.float64) - self.tau_start
        return self.evaluate_local(s)

    def evaluate_local(self, s: FloatArray | float) -> FloatArray:
        p1 = self.p1_polynomial()
        s = np.asarray(s, dtype=np.float64)
        return np.stack([p1(s), -p1.deriv(1)(s), p1.deriv(2)(s)])
