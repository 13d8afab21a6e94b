"""
Domain types shared by everything else: bounds and states, control
schedules, switching laws, and the chattering value types.
"""

from .bounds import (
    Unbounded,
    BoundValue,
    as_bound_value,
    Bounds,
    validate_bounds,
    as_state,
    FEASIBILITY_RTOL,
)
from .control import Segment, PiecewiseControl
from .switching_law import (
    SystemBehavior,
    TangentMarker,
    LawItem,
    AugmentedSwitchingLaw,
    asl_to_text,
    parse_asl,
)
from .chattering_types import ChatteringConstants, CostateArc
