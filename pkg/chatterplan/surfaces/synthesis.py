"""
Switch-time synthesis for the approach phase: the (at most two) switches that
take a scaled state to its first chattering junction `(a, 0, 0)`.

Along a `-1` arc `minus_invariants` stay put, along a `+1` arc
`plus_invariants` do, and both scale like `(a**2, a**3)`. So matching
`I3 / |I2|**1.5` between the start state and a unit surface point picks the
surface parameter, and the ratio of the `I2`s then gives `a`.

| Plan       | Schedule                                   | Lands on      |
| ---------- | ------------------------------------------ | ------------- |
| two-switch | `-1` for `d0`, then the `GAMMA_PLUS` path  | `GAMMA_PLUS`  |
| one-switch | `+1` for `d1`, then the `GAMMA_MINUS` path | `GAMMA_MINUS` |
| touch      | `+1` until `y3` touches zero               | `GAMMA_F`     |

Every candidate is propagated and audited before it is accepted. When more
than one survives the cheapest wins, counting the chattering tail that
follows the junction as `a**4 * J*`.
"""

from __future__ import annotations
import dataclasses
from functools import lru_cache
import math
from typing import Callable, Optional

import numpy as np
from scipy import optimize

import splatlog

from chatterplan.chattering import solve_constants
from chatterplan.core import Bounds, PiecewiseControl
from chatterplan.dynamics import (
    audit,
    boundary_states,
    integral_cost,
    propagate,
    sample,
)
from chatterplan.errors import (
    Infeasible,
    NoConvergence,
    OnNoChatterCurve,
    ParamOutOfRange,
)
from chatterplan.typings import FloatArray, VectorLike

from .parameterization import (
    SurfaceKind,
    coupled_t1,
    eval_surface,
    surface_constants,
)
from .regions import (
    RegionLabel,
    as_scaled_state,
    lowest_push,
    minus_invariants,
    on_no_chatter_curve,
    plus_invariants,
    precheck,
    state_scale,
)

__all__ = [
    "SCAN_POINTS",
    "ApproachPlan",
    "no_chatter_schedule",
    "synthesize_approach",
    "classify",
]

log = splatlog.get_logger(__name__)

SCAN_POINTS = 400

_Y3_ONLY = Bounds.of(1, None, None, None)


@dataclasses.dataclass(frozen=True)
class ApproachPlan:
    """
    A control taking `y0` to `(a, 0, 0)`, where the chattering takes over.

    `surface` and `params` name the surface point the last arc (or the only
    arc, for `GAMMA_F`) starts from. `cost` is the integral of `y3` over the
    approach plus `a**4 * J*` for the chattering after it.
    """

    y0: FloatArray
    control: PiecewiseControl
    a: float
    region: RegionLabel
    surface: SurfaceKind
    params: tuple[float, ...]
    cost: float

    @property
    def junction_state(self) -> FloatArray:
        return np.array([self.a, 0.0, 0.0])

    def final_state(self) -> FloatArray:
        return propagate(self.y0, self.control)

    def switch_states(self) -> FloatArray:
        """States at each switch, shape `(len(control) - 1, 3)`."""
        return boundary_states(self.y0, self.control)[1:-1]

    def to_json_encodable(self) -> dict:
        return {
            "region": self.region.value,
            "surface": self.surface.value,
            "params": list(self.params),
            "a": self.a,
            "cost": self.cost,
            "control": self.control.to_json_encodable(),
        }


@dataclasses.dataclass(frozen=True)
class _Candidate:
    surface: SurfaceKind
    a: float
    params: tuple[float, ...]
    lead: float
    control: PiecewiseControl
    cost: float


# Scan tables
# ============================================================================


def _gamma_plus_unit(t2: float) -> tuple[tuple[float, float], FloatArray]:
    sc = surface_constants()
    t1 = coupled_t1(t2, sc)
    return (t1, t2), eval_surface(SurfaceKind.GAMMA_PLUS, 1.0, (t1, t2))


def _gamma_minus_unit(t: float) -> tuple[tuple[float], FloatArray]:
    return (t,), eval_surface(SurfaceKind.GAMMA_MINUS, 1.0, (t,))


@lru_cache(maxsize=1)
def _gamma_plus_table() -> tuple[FloatArray, FloatArray]:
    sc = surface_constants()
    grid = np.linspace(sc.t2_star, sc.r_star, SCAN_POINTS)
    invariants = np.array(
        [minus_invariants(_gamma_plus_unit(t2)[1]) for t2 in grid]
    )
    return grid, invariants


@lru_cache(maxsize=1)
def _gamma_minus_table() -> tuple[FloatArray, FloatArray]:
    sc = surface_constants()
    grid = np.linspace(0.0, sc.r_star, SCAN_POINTS)
    invariants = np.array(
        [plus_invariants(_gamma_minus_unit(t)[1]) for t in grid]
    )
    return grid, invariants


# Matching
# ============================================================================


def _mismatch(unit: tuple[float, float], start: tuple[float, float]) -> float:
    # Zero where unit and start share I3 / |I2|**1.5, written without the
    # division so it stays finite through I2 == 0.
    return unit[1] * abs(start[0]) ** 1.5 - start[1] * abs(unit[0]) ** 1.5


def _scale(
    unit: tuple[float, float], start: tuple[float, float]
) -> Optional[float]:
    u2, u3 = unit
    s2, s3 = start
    if abs(u2) ** 1.5 >= abs(u3):
        if u2 == 0.0:
            return None
        ratio = s2 / u2
        return math.sqrt(ratio) if ratio > 0 else None
    ratio = s3 / u3
    return ratio ** (1.0 / 3.0) if ratio > 0 else None


def _roots(
    fn: Callable[[float], float], grid: FloatArray, values: FloatArray
) -> list[float]:
    roots = []
    for lo, hi, f_lo, f_hi in zip(grid, grid[1:], values, values[1:]):
        if f_lo == 0.0:
            roots.append(float(lo))
        elif f_lo * f_hi < 0.0:
            roots.append(
                optimize.brentq(
                    fn, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps
                )
            )
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def _accepts(
    y: FloatArray, control: PiecewiseControl, a: float, tol: float
) -> bool:
    reach = max(1.0, state_scale(y), a) ** np.arange(1, 4)
    final = propagate(y, control)
    if np.any(np.abs(final - [a, 0.0, 0.0]) > tol * reach):
        return False
    report = audit(sample(y, control, control.duration), _Y3_ONLY)
    return report[3].min_value >= -tol * reach[2]


def _candidates(
    y: FloatArray,
    tol: float,
    surface: SurfaceKind,
    first_level: float,
) -> list[_Candidate]:
    if surface is SurfaceKind.GAMMA_PLUS:
        grid, table = _gamma_plus_table()
        unit_at, invariants = _gamma_plus_unit, minus_invariants
    else:
        grid, table = _gamma_minus_table()
        unit_at, invariants = _gamma_minus_unit, plus_invariants

    start = invariants(y)
    values = np.array([_mismatch(tuple(row), start) for row in table])
    j_star = solve_constants().j_star
    sigma = state_scale(y)

    found = []
    for root in _roots(
        lambda p: _mismatch(invariants(unit_at(p)[1]), start), grid, values
    ):
        params, unit = unit_at(root)
        a = _scale(invariants(unit), start)
        if a is None:
            continue
        point = a * unit[0]
        # The first arc runs y1 down under -1, up under +1.
        lead = first_level * (point - y[0])
        if lead < -tol * sigma:
            continue
        if lead <= tol * sigma:
            lead = 0.0

        if surface is SurfaceKind.GAMMA_PLUS:
            t1, t2 = params
            pieces = [(lead, -1.0), (a * (t1 - t2), 1.0), (a * t2, -1.0)]
        else:
            (t,) = params
            pieces = [(lead, 1.0), (a * t, -1.0)]
        control = PiecewiseControl.of(pieces)
        if not len(control):
            continue
        if not _accepts(y, control, a, tol):
            log.debug(
                "Rejected approach candidate",
                surface=surface.value,
                params=params,
                a=a,
            )
            continue
        found.append(
            _Candidate(
                surface=surface,
                a=a,
                params=tuple(float(p) for p in params),
                lead=lead,
                control=control,
                cost=integral_cost(y, control, 3) + a**4 * j_star,
            )
        )
    return found


# Operations
# ============================================================================


def no_chatter_schedule(y0: VectorLike, tol: float = 1e-9) -> PiecewiseControl:
    """
    The direct control from a state on the no-chatter curve: `v = -1` for
    `y1`, straight to the origin.

    ##### Examples #####

    ```python
    >>> no_chatter_schedule([2.0, -2.0, 4.0 / 3.0]).segments
    (Segment(duration=2.0, level=-1.0),)

    >>> no_chatter_schedule([1.0, 0.0, 0.0])
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: state is not on the no-chatter curve

    ```
    """
    y = as_scaled_state(y0)
    if not on_no_chatter_curve(y, tol):
        raise ParamOutOfRange(
            "state is not on the no-chatter curve", y=y.tolist()
        )
    return PiecewiseControl.of([(max(0.0, float(y[0])), -1.0)])


def _touch_plan(y: FloatArray) -> ApproachPlan:
    _, s = lowest_push(y)
    control = PiecewiseControl.of([(s, 1.0)])
    a = float(y[0]) + s
    return ApproachPlan(
        y0=y,
        control=control,
        a=a,
        region=RegionLabel.ON_GAMMA_F,
        surface=SurfaceKind.GAMMA_F,
        params=(s / a if a > 0 else 0.0,),
        cost=integral_cost(y, control, 3) + a**4 * solve_constants().j_star,
    )


def _label(candidate: _Candidate) -> RegionLabel:
    plus = candidate.surface is SurfaceKind.GAMMA_PLUS
    if candidate.lead == 0.0:
        if plus:
            return RegionLabel.ON_GAMMA_PLUS
        return RegionLabel.ON_GAMMA_MINUS
    return RegionLabel.OMEGA_MINUS if plus else RegionLabel.OMEGA_PLUS


def synthesize_approach(y0: VectorLike, tol: float = 1e-9) -> ApproachPlan:
    """
    Plan the approach from `y0` to its first junction.

    Accuracy is relative to the size of the move: component `k` of the end
    state is within `tol * reach**k` of `(a, 0, 0)`, with
    `reach = max(1, state_scale(y0), a)`, and `y3` never dips below
    `-tol * reach**3`.

    ##### Examples #####

    From `e1` the approach is the first chattering cycle itself:

    ```python
    >>> from chatterplan.chattering import build_cycle_control
    >>> c = solve_constants()

    >>> plan = synthesize_approach([1.0, 0.0, 0.0])
    >>> plan.region
    <RegionLabel.OMEGA_MINUS: 'OmegaMinus'>
    >>> abs(plan.a - c.alpha) < 1e-8
    True
    >>> np.allclose(
    ...     plan.control.durations(),
    ...     build_cycle_control(c, 1).durations(),
    ...     rtol=0.0,
    ...     atol=1e-8,
    ... )
    True

    ```

    Starting on `GAMMA_PLUS` leaves a single switch, onto `GAMMA_MINUS`:

    ```python
    >>> sc = surface_constants()
    >>> y = eval_surface(
    ...     SurfaceKind.GAMMA_PLUS, 2.0, (coupled_t1(4.0, sc), 4.0)
    ... )
    >>> plan = synthesize_approach(y)
    >>> plan.region, plan.control.switch_count()
    (<RegionLabel.ON_GAMMA_PLUS: 'OnGammaPlus'>, 1)
    >>> abs(plan.a - 2.0) < 1e-8
    True
    >>> switch = plan.switch_states()[0]
    >>> on_minus = eval_surface(SurfaceKind.GAMMA_MINUS, 2.0, [4.0])
    >>> float(np.max(np.abs(switch - on_minus))) < 1e-8
    True

    ```

    States it will not plan for:

    ```python
    >>> synthesize_approach([2.0, -2.0, 4.0 / 3.0])
    Traceback (most recent call last):
      ...
    chatterplan.errors.OnNoChatterCurve: state is on the no-chatter curve,
        v = -1 for 2.0 reaches the origin

    >>> synthesize_approach([-2.1, 1.5, 0.0])
    Traceback (most recent call last):
      ...
    chatterplan.errors.Infeasible: y3 goes negative whatever the control

    >>> synthesize_approach([0.0, 0.0, 10.0])
    Traceback (most recent call last):
      ...
    chatterplan.errors.NoConvergence: no approach from (0.0, 0.0, 10.0)
        reaches a junction

    ```
    """
    y = as_scaled_state(y0)
    label = precheck(y, tol)

    if label is RegionLabel.NO_CHATTER_CURVE:
        schedule = no_chatter_schedule(y, tol)
        raise OnNoChatterCurve(
            "state is on the no-chatter curve,\n"
            f"    v = -1 for {schedule.duration!r} reaches the origin",
            schedule=schedule,
            y=y.tolist(),
        )
    if label is RegionLabel.OMEGA_INFEASIBLE:
        raise Infeasible(
            "y3 goes negative whatever the control",
            y=y.tolist(),
            lowest=lowest_push(y)[0],
        )
    if label is RegionLabel.ON_GAMMA_F:
        return _touch_plan(y)

    candidates = [
        *_candidates(y, tol, SurfaceKind.GAMMA_PLUS, -1.0),
        *_candidates(y, tol, SurfaceKind.GAMMA_MINUS, 1.0),
    ]
    if not candidates:
        raise NoConvergence(
            f"no approach from {tuple(float(v) for v in y)!r}\n"
            "    reaches a junction",
            y=y.tolist(),
        )

    on_surface = [c for c in candidates if c.lead == 0.0]
    if on_surface:
        # GAMMA_PLUS first: its candidates precede in `candidates`.
        best = on_surface[0]
    else:
        best = min(candidates, key=lambda c: c.cost)

    plan = ApproachPlan(
        y0=y,
        control=best.control,
        a=best.a,
        region=_label(best),
        surface=best.surface,
        params=best.params,
        cost=best.cost,
    )
    log.debug(
        "Synthesized approach",
        region=plan.region.value,
        a=plan.a,
        candidates=len(candidates),
        cost=plan.cost,
    )
    return plan


def classify(y0: VectorLike, tol: float = 1e-9) -> RegionLabel:
    """
    ##### Examples #####

    ```python
    >>> classify([1.0, 0.0, 0.0])
    <RegionLabel.OMEGA_MINUS: 'OmegaMinus'>
    >>> str(classify([2.0, -2.0, 4.0 / 3.0]))
    'NoChatterCurve'
    >>> str(classify([-2.1, 1.5, 0.0]))
    'OmegaInfeasible'

    ```
    """
    y = as_scaled_state(y0)
    label = precheck(y, tol)
    if label is not None:
        return label
    return synthesize_approach(y, tol).region
