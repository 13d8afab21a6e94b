"""
Where the junction recursion comes from.

Over four consecutive quarters `(t0, t1, t2, t3)` the state moves by amounts
that depend on the quarters only through

    F1 = sum(t_j)
    F2 = sum(t_j**3)
    F3 = sum(t_j**3 (t_j + 2 sum_{k > j} t_k))

If the Jacobian of `(F1, F2, F3)` in `(t0, t1, t2)` were regular, nearby
quarters would make the same move in the same time, contradicting
uniqueness. The determinant factors as `6 (t1 + t2) fc(t2; t0, t1)`, which
is what `jacobian_check` confirms.
"""

from __future__ import annotations
from typing import Optional

import numpy as np

import splatlog

from chatterplan.errors import LengthMismatch
from chatterplan.typings import FloatArray, VectorLike

from .recursion import fc, next_tau

__all__ = [
    "quarter_moments",
    "quarter_jacobian",
    "jacobian_check",
    "random_quadruples",
]

log = splatlog.get_logger(__name__)


def _as_quadruple(quadruple: VectorLike) -> FloatArray:
    t = np.asarray(quadruple, dtype=np.float64).reshape(-1)
    if t.shape[0] != 4:
        raise LengthMismatch(
            f"expected 4 quarters, given {t.shape[0]}", count=t.shape[0]
        )
    return t


def quarter_moments(quadruple: VectorLike) -> FloatArray:
    """
    ##### Examples #####

    ```python
    >>> quarter_moments([1.0, 1.0, 1.0, 1.0])
    array([ 4.,  4., 16.])

    ```
    """
    t = _as_quadruple(quadruple)
    after = np.cumsum(t[::-1])[::-1] - t
    return np.array(
        [t.sum(), (t**3).sum(), (t**3 * (t + 2.0 * after)).sum()]
    )


def quarter_jacobian(quadruple: VectorLike) -> FloatArray:
    """Partials of `quarter_moments` in the first three quarters."""
    t = _as_quadruple(quadruple)
    t0, t1, t2, t3 = t
    return np.array(
        [
            [1.0, 1.0, 1.0],
            [3.0 * t0**2, 3.0 * t1**2, 3.0 * t2**2],
            [
                4.0 * t0**3 + 6.0 * t0**2 * (t1 + t2 + t3),
                2.0 * t0**3 + 4.0 * t1**3 + 6.0 * t1**2 * (t2 + t3),
                2.0 * (t0**3 + t1**3) + 4.0 * t2**3 + 6.0 * t2**2 * t3,
            ],
        ]
    )


def jacobian_check(quadruple: VectorLike) -> float:
    """
    Relative residual of the determinant factorization.

    ##### Examples #####

    ```python
    >>> round(float(np.linalg.det(quarter_jacobian([2.0, 1.0, 0.0, 5.0]))), 9)
    -90.0
    >>> 6.0 * (1.0 + 0.0) * fc(0.0, 2.0, 1.0)
    -90.0
    >>> jacobian_check([2.0, 1.0, 0.0, 5.0]) < 1e-12
    True

    ```

    On quarters that follow the recursion the determinant vanishes:

    ```python
    >>> t = random_quadruples(100, np.random.default_rng(7))
    >>> max(jacobian_check(q) for q in t) <= 1e-9
    True
    >>> max(abs(fc(q[2], q[0], q[1])) for q in t) < 1e-10
    True

    ```
    """
    t = _as_quadruple(quadruple)
    jacobian = quarter_jacobian(t)
    det = float(np.linalg.det(jacobian))
    factored = 6.0 * (t[1] + t[2]) * fc(t[2], t[0], t[1])
    # Hadamard bound on |det|
    scale = float(np.prod(np.linalg.norm(jacobian, axis=1)))
    return abs(det - factored) / scale


def random_quadruples(
    count: int, rng: Optional[np.random.Generator] = None
) -> list[FloatArray]:
    """
    Quarters `(t0, t1, t2, t3)` with `t0 > t1 > 0` drawn at random and the
    rest from `next_tau`.
    """
    rng = np.random.default_rng() if rng is None else rng
    out = []
    for _ in range(count):
        t0 = float(rng.uniform(0.5, 2.0))
        t1 = t0 * float(rng.uniform(0.05, 0.95))
        t2 = next_tau(t0, t1)
        out.append(np.array([t0, t1, t2, next_tau(t1, t2)]))
    return out
