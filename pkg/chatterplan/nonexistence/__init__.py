"""
Numerical evidence that chattering does not happen in the low-order cases:
third-order chains, and fourth-order chains against the acceleration limit.
"""

from .recursion import (
    TAU_FORM_STEPS,
    fc,
    next_tau,
    next_r,
    RecursionState,
    run_recursion,
    RECURSION_HEADER,
    write_recursion_csv,
)
from .jacobian import (
    quarter_moments,
    quarter_jacobian,
    jacobian_check,
    random_quadruples,
)
from .shortcut import ShortcutReport, connecting_arc, check_n3_shortcut
