"""
Error hierarchy.

Everything `chatterplan` raises on purpose descends from
`chatterplan.errors.ChatterplanError`. The three intermediate classes group
errors by what the command line does with them:

| Group                 | Exit code | Meaning                                 |
| --------------------- | --------- | --------------------------------------- |
| `UsageError`          | 1         | Bad input: malformed, out of range      |
| `SolverFailure`       | 2         | A numeric procedure did not get there   |
| `InfeasibleError`     | 3         | The request has no (supported) solution |

Each error carries a `data` mapping with whatever structured context was on
hand when it was raised. It goes into the log and the JSON error report.

##### Examples #####

```python
>>> error = NoConvergence("Newton exhausted", residual=0.5)
>>> error.exit_code
2
>>> error.data
{'residual': 0.5}
>>> isinstance(error, SolverFailure)
True

>>> DisplacementTooSmall("too close").exit_code
3

```
"""

from __future__ import annotations
from typing import Any, ClassVar

__all__ = [
    "ChatterplanError",
    "UsageError",
    "SolverFailure",
    "InfeasibleError",
    "NonPositiveBound",
    "InfiniteControlBound",
    "LengthMismatch",
    "OrderMismatch",
    "ParseError",
    "ConfigError",
    "ParamOutOfRange",
    "NegativeY3",
    "OrderViolated",
    "InvalidJunctionPair",
    "NoConvergence",
    "NotInFeasibleBox",
    "SubPlannerFailure",
    "Infeasible",
    "DisplacementTooSmall",
    "CruiseImpossible",
    "OnNoChatterCurve",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_SOLVER_FAILURE",
    "EXIT_INFEASIBLE",
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER_FAILURE = 2
EXIT_INFEASIBLE = 3


class ChatterplanError(Exception):
    exit_code: ClassVar[int] = EXIT_USAGE

    data: dict[str, Any]

    def __init__(self, message: str, **data: Any):
        super().__init__(message)
        self.data = data

    @property
    def message(self) -> str:
        return str(self)

    def to_json_encodable(self) -> dict[str, Any]:
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "data": self.data,
        }


# Groups
# ============================================================================


class UsageError(ChatterplanError):
    exit_code = EXIT_USAGE


class SolverFailure(ChatterplanError):
    exit_code = EXIT_SOLVER_FAILURE


class InfeasibleError(ChatterplanError):
    exit_code = EXIT_INFEASIBLE


# Usage
# ============================================================================


class NonPositiveBound(UsageError):
    pass


class InfiniteControlBound(UsageError):
    pass


class LengthMismatch(UsageError):
    pass


class OrderMismatch(UsageError):
    pass


class ParseError(UsageError):
    pass


class ConfigError(UsageError):
    pass


class ParamOutOfRange(UsageError):
    pass


class NegativeY3(UsageError):
    pass


class OrderViolated(UsageError):
    pass


class InvalidJunctionPair(UsageError):
    pass


# Solver Failures
# ============================================================================


class NoConvergence(SolverFailure):
    pass


class NotInFeasibleBox(SolverFailure):
    pass


class SubPlannerFailure(SolverFailure):
    pass


# Infeasible Requests
# ============================================================================


class Infeasible(InfeasibleError):
    pass


class DisplacementTooSmall(InfeasibleError):
    pass


class CruiseImpossible(InfeasibleError):
    pass


class OnNoChatterCurve(InfeasibleError):
    """
    The state sits on the curve from which the origin is reached directly,
    with no chattering. The direct schedule rides along as `schedule` so the
    caller can just use it.
    """

    def __init__(self, message: str, *, schedule: Any, **data: Any):
        super().__init__(message, **data)
        self.schedule = schedule
