from __future__ import annotations
from typing import Any

from typeguard import check_type, TypeCheckError

__all__ = ["type_problem"]


def type_problem(value: Any, expected_type: Any) -> str | None:
    """
    Check `value` against `expected_type`, returning `None` if it conforms and
    the `typeguard` complaint otherwise.

    ##### Examples #####

    ```python
    >>> from typing import TypedDict

    >>> class Point(TypedDict):
    ...     x: float
    ...     y: float

    >>> type_problem({"x": 1.0, "y": 2.0}, Point) is None
    True

    >>> type_problem({"x": 1.0}, Point) is None
    False

    >>> "y" in type_problem({"x": 1.0, "y": "two"}, Point)
    True

    ```
    """
    try:
        check_type(value, expected_type)
    except TypeCheckError as error:
        return str(error)
    return None
