"""
The chattering constants.

One cycle of the scaled problem runs `-1, +1, -1` from `e1` and must land on
`(alpha, 0, 0)`, with the cubic costate `p1` (roots at fractions `beta1`,
`beta2`, `beta3` of the cycle) continuous together with its derivative across
the junction into the next, `alpha` times shorter, cycle.

With

    S_k = 1 - 2 (1 - beta1)**k + 2 (1 - beta2)**k

the landing conditions are `S1 tau1 = 1 - alpha`, `S2 tau1 = 2` and
`S3 tau1 = 3`. Continuity of `p1` gives `beta3` in closed form, continuity of
`p1'` gives

    2 (beta1 + beta2 + beta3) + (alpha**2 - 1) e2 - 3 = 0

where `e2` is the second elementary symmetric polynomial of the betas.
Eliminating `tau1 = 2 / S2` leaves three equations in
`(alpha, beta1, beta2)`, solved with `scipy.optimize.root`.
"""

from __future__ import annotations
from functools import lru_cache

import numpy as np
from scipy import optimize

import splatlog

from chatterplan.core import ChatteringConstants
from chatterplan.errors import NoConvergence, NotInFeasibleBox, ParamOutOfRange
from chatterplan.typings import FloatArray

from .cycles import cycle_cost

__all__ = [
    "SEED",
    "GRID_RESOLUTION",
    "s_k",
    "beta3_from",
    "reduced_residuals",
    "junction_residuals",
    "full_residuals",
    "in_feasible_box",
    "check_tol",
    "solve_constants",
]

log = splatlog.get_logger(__name__)

SEED = (0.17, 0.47, 0.87)

GRID_RESOLUTION = 50


def check_tol(tol: float) -> None:
    """
    ##### Examples #####

    ```python
    >>> check_tol(-1)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: tolerance must be positive

    ```
    """
    if not tol > 0:
        raise ParamOutOfRange("tolerance must be positive", tol=tol)


def s_k(beta1, beta2, k: int):
    """Works on scalars and arrays alike."""
    return 1.0 - 2.0 * (1.0 - beta1) ** k + 2.0 * (1.0 - beta2) ** k


def beta3_from(alpha, beta1, beta2):
    """
    The third costate root fraction, from continuity of `p1` at a junction.

    ##### Examples #####

    At `alpha = 0` there is no next cycle to match and the root sits at 1:

    ```python
    >>> beta3_from(0.0, 0.3, 0.6)
    1.0

    ```
    """
    s = beta1 + beta2
    p = beta1 * beta2
    return (1.0 - s + p) / (1.0 - s + p * (1.0 - alpha**3))


def _e2(beta1, beta2, beta3):
    return beta1 * beta2 + beta1 * beta3 + beta2 * beta3


def reduced_residuals(v) -> FloatArray:
    """Residuals in `(alpha, beta1, beta2)` alone. Broadcasts over arrays."""
    alpha, beta1, beta2 = v
    s1, s2, s3 = (s_k(beta1, beta2, k) for k in (1, 2, 3))
    beta3 = beta3_from(alpha, beta1, beta2)
    return np.array(
        [
            3.0 * s2 - 2.0 * s3,
            2.0 * s1 - (1.0 - alpha) * s2,
            2.0 * (beta1 + beta2 + beta3)
            + (alpha**2 - 1.0) * _e2(beta1, beta2, beta3)
            - 3.0,
        ]
    )


def junction_residuals(v) -> FloatArray:
    """
    Residuals in `(alpha, beta1, beta2, beta3)` with `beta3` left free: the
    two landing conditions with `tau1` eliminated, then the linear and
    constant coefficient matches of `p1` across a junction. Broadcasts over
    arrays.

    ##### Examples #####

    ```python
    >>> c = solve_constants()
    >>> r = junction_residuals((c.alpha, c.beta1, c.beta2, c.beta3))
    >>> float(np.max(np.abs(r))) < 1e-10
    True

    ```
    """
    alpha, beta1, beta2, beta3 = v
    s1, s2, s3 = (s_k(beta1, beta2, k) for k in (1, 2, 3))
    e1 = beta1 + beta2 + beta3
    e2 = _e2(beta1, beta2, beta3)
    return np.array(
        [
            3.0 * s2 - 2.0 * s3,
            2.0 * s1 - (1.0 - alpha) * s2,
            2.0 * e1 + (alpha**2 - 1.0) * e2 - 3.0,
            e1 - e2 - beta1 * beta2 * beta3 * (alpha**3 - 1.0) - 1.0,
        ]
    )


def full_residuals(c: ChatteringConstants) -> FloatArray:
    """
    All five defining equations, evaluated on a solved tuple: the three
    landing conditions, then continuity of `p1'` and of `p1`.
    """
    a, b1, b2, b3, t1 = c.alpha, c.beta1, c.beta2, c.beta3, c.tau1
    e1 = b1 + b2 + b3
    e2 = _e2(b1, b2, b3)
    e3 = b1 * b2 * b3
    return np.array(
        [
            s_k(b1, b2, 1) * t1 - (1.0 - a),
            s_k(b1, b2, 2) * t1 - 2.0,
            s_k(b1, b2, 3) * t1 - 3.0,
            2.0 * e1 + (a**2 - 1.0) * e2 - 3.0,
            e1 - e2 - e3 * (a**3 - 1.0) - 1.0,
        ]
    )


def in_feasible_box(alpha, beta1, beta2, beta3) -> bool:
    return bool(0 < alpha < 1 and 0 < beta1 < beta2 < 1 < beta3)


def _grid_seed() -> tuple[float, float, float]:
    axis = np.linspace(0.01, 0.99, GRID_RESOLUTION)
    alpha, beta1, beta2 = np.meshgrid(axis, axis, axis, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        norm = np.linalg.norm(reduced_residuals((alpha, beta1, beta2)), axis=0)
    norm = np.where((beta1 < beta2) & np.isfinite(norm), norm, np.inf)
    index = np.unravel_index(np.argmin(norm), norm.shape)
    return (
        float(alpha[index]),
        float(beta1[index]),
        float(beta2[index]),
    )


def _root(seed) -> tuple[FloatArray, float]:
    result = optimize.root(
        reduced_residuals, seed, method="hybr", options={"xtol": 1e-15}
    )
    residual = float(np.max(np.abs(reduced_residuals(result.x))))
    log.debug(
        "Root search finished",
        seed=seed,
        success=result.success,
        evaluations=result.nfev,
        residual=residual,
    )
    return result.x, residual


def solve_constants(tol: float = 1e-12) -> ChatteringConstants:
    """
    Solve for the chattering constants. Results are cached per `tol`.

    ##### Examples #####

    ```python
    >>> c = solve_constants()

    >>> expected = dict(
    ...     alpha=0.1660687, beta1=0.4698574, beta2=0.8716996,
    ...     beta3=1.0283610, tau1=4.2479105, tau_inf=5.0938372,
    ... )
    >>> all(abs(getattr(c, k) - v) < 1e-6 for k, v in expected.items())
    True

    >>> abs(c.j_star - 1.3452202) < 1e-6
    True
    >>> float(np.max(np.abs(full_residuals(c)))) < 1e-10
    True
    >>> c.tau_inf == c.tau1 / (1.0 - c.alpha)
    True

    >>> solve_constants(-1.0)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: tolerance must be positive

    ```
    """
    check_tol(tol)
    return _solve_constants(float(tol))


@lru_cache(maxsize=8)
def _solve_constants(tol: float) -> ChatteringConstants:
    x, residual = _root(SEED)
    if not residual <= tol:
        log.warning(
            "Seeded root search missed, falling back to a grid scan",
            residual=residual,
            tol=tol,
        )
        x, residual = _root(_grid_seed())
        if not residual <= tol:
            raise NoConvergence(
                "chattering constants did not converge",
                residual=residual,
                tol=tol,
            )

    alpha, beta1, beta2 = (float(v) for v in x)
    beta3 = float(beta3_from(alpha, beta1, beta2))
    if not in_feasible_box(alpha, beta1, beta2, beta3):
        raise NotInFeasibleBox(
            "solution violates 0 < beta1 < beta2 < 1 < beta3",
            alpha=alpha,
            beta1=beta1,
            beta2=beta2,
            beta3=beta3,
        )

    tau1 = 2.0 / s_k(beta1, beta2, 2)
    j1 = cycle_cost(beta1, beta2, tau1)
    c = ChatteringConstants(
        alpha=alpha,
        beta1=beta1,
        beta2=beta2,
        beta3=beta3,
        tau1=tau1,
        tau_inf=tau1 / (1.0 - alpha),
        j1=j1,
        j_star=j1 / (1.0 - alpha**4),
    )

    worst = float(np.max(np.abs(full_residuals(c))))
    if not worst <= max(tol, 1e-10):
        raise NoConvergence(
            "full chattering system residual too large",
            residual=worst,
            tol=tol,
        )

    log.info(
        "Solved chattering constants",
        alpha=alpha,
        tau1=tau1,
        j_star=c.j_star,
        residual=worst,
    )
    return c
