"""
The chattering solution of the scaled, parameter-free problem: its
constants, schedules, costates, the self-similar family around it and the
checks that pin its structure down.
"""

from .cycles import (
    TRUNCATION_RTOL,
    CYCLE_LEVELS,
    E1,
    cycle_control,
    cycle_cost,
    build_cycle_control,
    build_chattering_schedule,
)
from .constants import (
    SEED,
    s_k,
    beta3_from,
    reduced_residuals,
    junction_residuals,
    full_residuals,
    in_feasible_box,
    check_tol,
    solve_constants,
)
from .costates import (
    SWITCHING_ATOL,
    costates,
    junction_jump,
    scaled_costates,
    switching_function_check,
)
from .family import (
    AlphaFamilyPoint,
    family_residuals,
    family_point,
    sweep,
    SWEEP_HEADER,
    write_sweep_csv,
    one_cycle_cost,
    total_cost,
)
from .homogeneity import homogeneity_check
from .one_switch import (
    EMPTINESS_THRESHOLD,
    ResidualMinimum,
    OneSwitchReport,
    one_switch_residuals,
    check_infeasible_one_switch,
)
