"""
Switching surfaces of the scaled problem, the regions they cut the state
space into, and the approach plans that get a state onto the chattering.
"""

from .parameterization import (
    GAMMA_F_T_MAX,
    SurfaceKind,
    SurfaceConstants,
    SurfacePoint,
    surface_constants,
    coupled_t1,
    gamma_plus_y3,
    eval_surface,
)
from .regions import (
    RegionLabel,
    as_scaled_state,
    state_scale,
    minus_invariants,
    plus_invariants,
    lowest_push,
    on_no_chatter_curve,
    precheck,
)
from .synthesis import (
    SCAN_POINTS,
    ApproachPlan,
    no_chatter_schedule,
    synthesize_approach,
    classify,
)
from .mesh import MESH_HEADER, MeshRow, default_params, mesh, write_mesh_csv
