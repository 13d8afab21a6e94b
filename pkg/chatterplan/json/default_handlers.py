from __future__ import annotations
import dataclasses
import math
from collections.abc import Callable, Mapping, Collection
from enum import Enum
from inspect import isclass, ismethod
from typing import Any, Type

import numpy as np

from chatterplan.lib.text import fmt_type

JSONEncodable = Any

THandleFn = Callable[[Any], JSONEncodable]


@dataclasses.dataclass(frozen=True, order=True)
class DefaultHandler:
    priority: int
    name: str
    is_match: Callable[[Any], bool] = dataclasses.field(compare=False)
    handle: THandleFn = dataclasses.field(compare=False)


def instance_handler(
    cls: Type, priority: int, handle: THandleFn
) -> DefaultHandler:
    return DefaultHandler(
        name=fmt_type(cls),
        priority=priority,
        is_match=lambda obj: isinstance(obj, cls),
        handle=handle,
    )


def method_handler(method_name: str, priority: int) -> DefaultHandler:
    return DefaultHandler(
        name=f".{method_name}()",
        priority=priority,
        is_match=lambda obj: ismethod(getattr(obj, method_name, None)),
        handle=lambda obj: getattr(obj, method_name)(),
    )


def finite_or_none(x: float) -> float | None:
    return x if math.isfinite(x) else None


def handle_dataclass(obj: Any) -> dict[str, Any]:
    # Shallow on purpose: nested values come back through `default`, so arrays
    # and enums inside dataclasses get their own handlers.
    return {
        field.name: getattr(obj, field.name)
        for field in dataclasses.fields(obj)
    }


def handle_ndarray(array: np.ndarray) -> list:
    if np.issubdtype(array.dtype, np.floating):
        return np.where(np.isfinite(array), array, None).tolist()
    return array.tolist()


def handle_exception(error: BaseException) -> dict[str, JSONEncodable]:
    dct: dict[str, JSONEncodable] = dict(
        type=fmt_type(error.__class__, module_names=False),
        msg=str(error),
    )
    if data := getattr(error, "data", None):
        dct["data"] = data
    if error.__cause__ is not None:
        dct["cause"] = handle_exception(error.__cause__)
    return dct


TO_JSON_ENCODABLE_HANDLER = method_handler(
    method_name="to_json_encodable",
    priority=10,
)

CLASS_HANDLER = DefaultHandler(
    name="class",
    priority=20,
    is_match=isclass,
    handle=fmt_type,
)

NDARRAY_HANDLER = instance_handler(
    cls=np.ndarray,
    priority=25,
    handle=handle_ndarray,
)

NUMPY_SCALAR_HANDLER = instance_handler(
    cls=np.generic,
    priority=25,
    handle=lambda obj: obj.item(),
)

DATACLASS_HANDLER = DefaultHandler(
    name="dataclasses.dataclass",
    priority=30,
    is_match=dataclasses.is_dataclass,
    handle=handle_dataclass,
)

ENUM_HANDLER = instance_handler(
    cls=Enum,
    priority=40,
    handle=lambda obj: obj.name,
)

EXCEPTION_HANDLER = instance_handler(
    cls=BaseException,
    priority=40,
    handle=handle_exception,
)

MAPPING_HANDLER = instance_handler(
    cls=Mapping,
    priority=50,
    handle=dict,
)

COLLECTION_HANDLER = instance_handler(
    cls=Collection,
    priority=60,
    handle=list,
)

FALLBACK_HANDLER = DefaultHandler(
    name="fallback",
    priority=100,
    is_match=lambda obj: True,
    handle=lambda obj: {
        "__class__": fmt_type(obj.__class__),
        "__repr__": repr(obj),
    },
)

ALL_HANDLERS = tuple(
    sorted(x for x in locals().values() if isinstance(x, DefaultHandler))
)
