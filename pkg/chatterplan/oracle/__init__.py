"""
Slow, simple cross-checks for the main solvers: a grid search over the
attenuation rate, a fixed-step integrator and residual landscapes.
"""

from .alpha_grid import AlphaOptimum, alpha_grid_optimum
from .rk4 import rk4_reference
from .landscape import (
    ROOT_THRESHOLD,
    LandscapeSystem,
    Landscape,
    LandscapeMinimum,
    landscape,
    residual_landscape,
    find_roots,
    count_roots,
)
