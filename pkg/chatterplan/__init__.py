"""Root of the `chatterplan` package.

Re-exports the pieces most callers need: errors, bounds and schedules,
propagation, the chattering constants, the planners and config loading.
Everything else is a subpackage import away.
"""

# NOTE  Order matters: each import only depends on the ones above it.
from chatterplan.typings import (
    Number,
    FloatArray,
    VectorLike,
    PlanMode,
    Problem7Config,
    RestToRestConfig,
    PlanConfig,
)
from chatterplan import lib
from chatterplan.errors import (
    ChatterplanError,
    UsageError,
    SolverFailure,
    InfeasibleError,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_SOLVER_FAILURE,
    EXIT_INFEASIBLE,
)
from chatterplan.json import JSONEncoder
from chatterplan.core import (
    Unbounded,
    Bounds,
    Segment,
    PiecewiseControl,
    AugmentedSwitchingLaw,
    ChatteringConstants,
)
from chatterplan.dynamics import (
    propagate,
    states_at,
    Trajectory,
    sample,
    audit,
    derive_switching_law,
)
from chatterplan.chattering import (
    solve_constants,
    build_chattering_schedule,
    sweep,
)
from chatterplan.surfaces import (
    surface_constants,
    classify,
    synthesize_approach,
)
from chatterplan.planner import (
    Problem7Spec,
    solve_problem7,
    solve_problem7_mim,
    compare_mim,
    RestToRestSpec,
    plan_rest_to_rest,
    gap_surface,
)
from chatterplan.config import DEFAULTS, PlanRequest, load_config
from chatterplan.setup import setup
