"""
Physical planners built on the scaled chattering: the velocity-limited
sub-problem, its greedy baseline, the run-up sub-planner and full
rest-to-rest moves.
"""

from .problem7 import (
    Problem7Spec,
    Problem7Plan,
    check_displacement,
    assemble_plan,
    solve_problem7,
    junction_states,
    convergence_rates,
    switches_per_cycle,
)
from .scaling import map_scaled_to_physical, map_physical_to_scaled
from .mim import MimComparison, solve_problem7_mim, compare_mim
from .s_curve import RunUpPlan, run_up_control, plan_run_up
from .rest_to_rest import (
    RestToRestSpec,
    EntryChoice,
    RestToRestReport,
    RestToRestPlan,
    chattering_peak,
    choose_entry,
    plan_rest_to_rest,
)
from .gap import GapSurface, gap_surface, GAP_HEADER, write_gap_csv
