"""Helpers for the doctest suites, excluded from the distributed package."""

from __future__ import annotations

import numpy as np

from chatterplan.core import Bounds, PiecewiseControl
from chatterplan.dynamics import audit, propagate_segment, sample
from chatterplan.surfaces import (
    SurfaceKind,
    coupled_t1,
    eval_surface,
    surface_constants,
)
from chatterplan.typings import FloatArray

__all__ = ["random_schedule", "random_state", "omega_minus_states"]

_Y3_ONLY = Bounds.of(1, None, None, None)


def random_schedule(
    rng: np.random.Generator,
    n_segments: int = 6,
    m0: float = 1.0,
    max_duration: float = 2.0,
) -> PiecewiseControl:
    """Uniform durations in `(0, max_duration]`, levels in `[-m0, m0]`."""
    durations = max_duration * (1.0 - rng.random(n_segments))
    levels = m0 * rng.uniform(-1.0, 1.0, n_segments)
    return PiecewiseControl.of(zip(durations, levels))


def random_state(
    rng: np.random.Generator, order: int, scale: float = 1.0
) -> FloatArray:
    return scale * rng.standard_normal(order)


def omega_minus_states(
    rng: np.random.Generator, count: int, max_lead: float = 1.0
) -> list[FloatArray]:
    """
    Scaled states in `OMEGA_MINUS`, drawn from its definition: the `-1` arc
    from the state reaches `GAMMA_PLUS` with `y3 >= 0` all the way. Pick a
    surface point, run the arc backwards for a random lead, and keep the
    state when `y3` stays non-negative going forward.
    """
    sc = surface_constants()
    out: list[FloatArray] = []
    while len(out) < count:
        a = rng.uniform(0.5, 2.0)
        t2 = rng.uniform(sc.t2_star, sc.r_star)
        on_plus = eval_surface(
            SurfaceKind.GAMMA_PLUS, a, (coupled_t1(t2, sc), t2)
        )
        lead = rng.uniform(0.05, max_lead) * a
        y0 = propagate_segment(on_plus, -1.0, -lead)
        arc = sample(y0, PiecewiseControl.of([(lead, -1.0)]), lead / 50.0)
        if audit(arc, _Y3_ONLY)[3].min_value >= 0.0:
            out.append(y0)
    return out
