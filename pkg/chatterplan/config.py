"""
Plan configuration documents.

A config is one JSON object with a `mode`:

| `mode`         | Schema             | Planner              |
| -------------- | ------------------ | -------------------- |
| `problem7`     | `Problem7Config`   | `solve_problem7`     |
| `mim`          | `Problem7Config`   | `solve_problem7_mim` |
| `rest_to_rest` | `RestToRestConfig` | `plan_rest_to_rest`  |

Schemas live in `chatterplan.typings`. Optional `cycles`, `tol` and `dt`
fall back to `DEFAULTS`.
"""

from __future__ import annotations
import dataclasses
import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Union

import splatlog

from chatterplan.errors import ConfigError, ParseError, UsageError
from chatterplan.lib.text import fmt
from chatterplan.lib.typeguard import type_problem
from chatterplan.planner import Problem7Spec, RestToRestSpec
from chatterplan.typings import Problem7Config, RestToRestConfig

__all__ = ["DEFAULTS", "PlanRequest", "load_config"]

log = splatlog.get_logger(__name__)

DEFAULTS = {"tol": 1e-12, "cycles": 40, "dt": 0.01}

_SCHEMAS = {
    "problem7": Problem7Config,
    "mim": Problem7Config,
    "rest_to_rest": RestToRestConfig,
}


@dataclasses.dataclass(frozen=True)
class PlanRequest:
    mode: str
    spec: Union[Problem7Spec, RestToRestSpec]
    cycles: int
    tol: float
    dt: float


def _read(source: Union[str, Path, Mapping]) -> Any:
    if isinstance(source, Mapping):
        return source
    path = Path(source)
    try:
        with path.open("r", encoding="utf-8") as fp:
            return json.load(fp)
    except json.JSONDecodeError as error:
        raise ParseError(
            f"{path} is not valid JSON: {error}", path=str(path)
        ) from error
    except OSError as error:
        raise ConfigError(
            f"can not read {path}: {error.strerror}", path=str(path)
        ) from error


def load_config(source: Union[str, Path, Mapping]) -> PlanRequest:
    """
    ##### Examples #####

    ```python
    >>> doc = {"mode": "problem7", "x01": -1, "m0": 1, "m3": 1, "x04": 0}
    >>> request = load_config({**doc, "xf4": 10})
    >>> request.spec
    Problem7Spec(m0=1.0, m3=1.0, x01=-1.0, x04=0.0, xf4=10.0)
    >>> request.cycles, request.tol, request.dt
    (40, 1e-12, 0.01)

    >>> rest = {"mode": "rest_to_rest", "bounds": [1, 1, 1.5, 4, 15]}
    >>> load_config(rest).spec.end
    15.0

    ```

    Problems come back as `ConfigError`, naming the field:

    ```python
    >>> load_config(doc)
    Traceback (most recent call last):
      ...
    chatterplan.errors.ConfigError: invalid problem7 config: ...xf4...

    >>> load_config({"mode": "warp"})
    Traceback (most recent call last):
      ...
    chatterplan.errors.ConfigError: unknown mode 'warp', expected one of
        'problem7', 'mim', 'rest_to_rest'

    >>> load_config({**doc, "x01": 1, "xf4": 1})
    Traceback (most recent call last):
      ...
    chatterplan.errors.ConfigError: invalid problem7 config: x01 must be
        negative, given 1.0

    ```
    """
    doc = _read(source)
    if not isinstance(doc, Mapping):
        raise ConfigError(
            f"expected a JSON object, given {fmt(type(doc))}",
            given=type(doc).__name__,
        )
    mode = doc.get("mode")
    if mode not in _SCHEMAS:
        raise ConfigError(
            f"unknown mode {mode!r}, expected one of\n"
            f"    {', '.join(repr(m) for m in _SCHEMAS)}",
            mode=mode,
        )
    problem = type_problem(dict(doc), _SCHEMAS[mode])
    if problem is not None:
        raise ConfigError(f"invalid {mode} config: {problem}", mode=mode)

    options = {**DEFAULTS, **{k: doc[k] for k in DEFAULTS if k in doc}}
    try:
        if mode == "rest_to_rest":
            spec = RestToRestSpec.of(
                doc["bounds"], doc.get("start"), doc.get("end")
            )
        else:
            spec = Problem7Spec(
                **{k: float(doc[k]) for k in ("m0", "m3", "x01", "x04", "xf4")}
            )
    except UsageError as error:
        raise ConfigError(
            f"invalid {mode} config: {error}", mode=mode, **error.data
        ) from error

    request = PlanRequest(
        mode=mode,
        spec=spec,
        cycles=int(options["cycles"]),
        tol=float(options["tol"]),
        dt=float(options["dt"]),
    )
    log.debug("Loaded config", mode=mode, **options)
    return request
