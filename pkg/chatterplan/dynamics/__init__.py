"""
Exact propagation of integrator chains under piecewise-constant control,
plus sampling, cost integrals, constraint audits and switching-law
derivation on top of it.
"""

from .propagate import (
    propagate_segment,
    segment_states,
    segment_polynomial,
    propagate,
    boundary_states,
    states_at,
    integral_cost,
)
from .trajectory import Trajectory, sample, write_csv, csv_header
from .audit import ComponentAudit, AuditReport, audit
from .switching_law import derive_switching_law
