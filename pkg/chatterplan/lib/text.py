"""Formatting helpers for error messages and reports."""

from __future__ import annotations
import typing
from typing import Any, Optional, Union, get_args, get_origin

BUILTINS_MODULE = object.__module__
TYPING_MODULE = typing.__name__

__all__ = ["get_name", "fmt_type", "fmt_type_hint", "fmt"]


def get_name(x: Any, *, module_names: bool = True) -> Optional[str]:
    """
    ##### Examples #####

    ```python
    >>> get_name(str)
    'str'

    >>> get_name(get_name)
    'chatterplan.lib.text.get_name'

    >>> get_name(get_name, module_names=False)
    'get_name'

    ```
    """
    name = getattr(x, "__qualname__", None) or getattr(x, "__name__", None)
    if not isinstance(name, str):
        return None
    module_name = getattr(x, "__module__", None)
    if module_names and module_name and module_name != BUILTINS_MODULE:
        return f"{module_name}.{name}"
    return name


def fmt_type(t: type, *, module_names: bool = True) -> str:
    """
    ##### Examples #####

    ```python
    >>> fmt_type(int)
    'int'

    >>> from chatterplan.errors import NoConvergence
    >>> fmt_type(NoConvergence)
    'chatterplan.errors.NoConvergence'

    >>> fmt_type(NoConvergence, module_names=False)
    'NoConvergence'

    ```
    """
    return get_name(t, module_names=module_names) or repr(t)


def fmt_type_hint(hint: Any) -> str:
    """
    Render a typing construct the way you'd write it.

    ##### Examples #####

    ```python
    >>> fmt_type_hint(Union[int, float])
    'int | float'

    >>> fmt_type_hint(Optional[str])
    'str | None'

    >>> fmt_type_hint(list[float])
    'list[float]'

    ```
    """
    origin = get_origin(hint)
    args = get_args(hint)

    if origin is Union:
        return " | ".join(fmt_type_hint(arg) for arg in args)

    if hint is type(None) or hint is None:
        return "None"

    if origin is not None:
        name = fmt_type(origin, module_names=False)
        if args:
            return "{}[{}]".format(
                name, ", ".join(fmt_type_hint(arg) for arg in args)
            )
        return name

    if isinstance(hint, type):
        return fmt_type(hint, module_names=False)

    return repr(hint)


def fmt(x: Any) -> str:
    """
    Format a value for an error message.

    ##### Examples #####

    ```python
    >>> fmt(int)
    'int'

    >>> fmt(Union[int, float])
    'int | float'

    >>> fmt((1.0, 2.5))
    '(1.0, 2.5)'

    ```
    """
    if get_origin(x) is not None or type(x).__module__ == TYPING_MODULE:
        return fmt_type_hint(x)
    if isinstance(x, type):
        return fmt_type(x)
    return repr(x)
