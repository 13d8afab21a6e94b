from __future__ import annotations
import json
from typing import Optional, TypeVar, IO, Union
from collections.abc import Iterable, Callable, Mapping

from chatterplan.lib.text import fmt, fmt_type
from chatterplan.typings import JSONEncoderCastable

from .default_handlers import ALL_HANDLERS, DefaultHandler

__all__ = ["JSONEncoder"]

Self = TypeVar("Self", bound="JSONEncoder")


class JSONEncoder(json.JSONEncoder):
    """
    An extension of `json.JSONEncoder` that knows about the things plans and
    reports are made of: `numpy` arrays and scalars, dataclasses, enums and
    errors.

    ##### Usage #####

    ```python
    >>> from sys import stdout
    >>> import numpy as np

    >>> encoder = JSONEncoder()
    >>> encoder.dump(dict(t=np.float64(0.5), x=np.array([1.0, 2.0])), stdout)
    {"t": 0.5, "x": [1.0, 2.0]}

    ```

    Non-finite array entries become `null`, so output stays valid JSON.

    ```python
    >>> encoder.encode(np.array([1.0, np.nan, np.inf]))
    '[1.0, null, null]'

    ```

    ###### Construction Helpers #####

    ```python
    >>> JSONEncoder.compact().encode(dict(x=1, y=[2, 3]))
    '{"x":1,"y":[2,3]}'

    >>> JSONEncoder.pretty().dump(dict(x=1), stdout)
    {
        "x": 1
    }

    ```

    ##### Extended Encoding Capabilities #####

    First matching handler wins.

    ###### Custom Handler #######

    ```python
    >>> class A:
    ...     def to_json_encodable(self):
    ...         return "a!"

    >>> encoder.encode(A())
    '"a!"'

    ```

    ###### Dataclasses ######

    Fields are encoded in declaration order, and nested values go back
    through the handlers.

    ```python
    >>> import dataclasses

    >>> @dataclasses.dataclass(frozen=True)
    ... class Sample:
    ...     t: float
    ...     x: np.ndarray

    >>> encoder.encode(Sample(t=1.0, x=np.zeros(2)))
    '{"t": 1.0, "x": [0.0, 0.0]}'

    ```

    ###### Enums ######

    Encoded by `name`.

    ```python
    >>> from enum import Enum

    >>> class Label(Enum):
    ...     OMEGA_MINUS = "OmegaMinus"

    >>> encoder.encode(Label.OMEGA_MINUS)
    '"OMEGA_MINUS"'

    ```

    ###### Errors ######

    ```python
    >>> from chatterplan.errors import NoConvergence
    >>> JSONEncoder.pretty().dump(RuntimeError("Never raised"), stdout)
    {
        "type": "RuntimeError",
        "msg": "Never raised"
    }

    ```

    `chatterplan.errors.ChatterplanError` instances have their own
    `to_json_encodable`, which takes precedence.

    ```python
    >>> encoder.encode(NoConvergence("nope", iterations=3))
    '{"error": "NoConvergence", "message": "nope", "data": {"iterations": 3}}'

    ```

    ###### Everything Else #######

    ```python
    >>> JSONEncoder.pretty().dump(lambda x: x, stdout)
    {
        "__class__": "function",
        "__repr__": "<function <lambda> at ...>"
    }

    ```
    """

    COMPACT_KWDS = dict(indent=None, separators=(",", ":"))
    PRETTY_KWDS = dict(indent=4)

    @classmethod
    def compact(cls: type[Self], **kwds) -> Self:
        return cls(**cls.COMPACT_KWDS, **kwds)

    @classmethod
    def pretty(cls: type[Self], **kwds) -> Self:
        return cls(**cls.PRETTY_KWDS, **kwds)

    @classmethod
    def cast(cls: type[Self], value: JSONEncoderCastable) -> Self:
        """
        ##### Examples #####

        ```python
        >>> JSONEncoder.cast("pretty").indent
        4

        >>> JSONEncoder.cast(None).indent is None
        True

        >>> JSONEncoder.cast("fancy")
        Traceback (most recent call last):
          ...
        ValueError: Only strings 'compact' and 'pretty' are recognized;
            given 'fancy'

        ```
        """
        if isinstance(value, cls):
            return value

        if value is None:
            return cls.compact()

        if isinstance(value, str):
            if value == "compact":
                return cls.compact()
            elif value == "pretty":
                return cls.pretty()
            else:
                raise ValueError(
                    (
                        "Only strings 'compact' and 'pretty' are recognized;"
                        "\n    given {!r}"
                    ).format(value)
                )

        if isinstance(value, Mapping):
            return cls(**value)

        raise TypeError(
            "Expected {}, given {}: {}".format(
                fmt(Union[cls, str, Mapping]), fmt(type(value)), fmt(value)
            )
        )

    _handlers: Optional[list[DefaultHandler]] = None

    def __init__(
        self,
        *,
        handlers: Union[None, DefaultHandler, Iterable[DefaultHandler]] = None,
        default: None = None,
        **kwds,
    ):
        if default is not None:
            raise TypeError(
                f"{fmt_type(JSONEncoder)} does not support `default` "
                + f"argument (`default` must be `None`), given {default!r}"
            )

        super().__init__(**kwds)

        if handlers is not None:
            self.add_handlers(handlers)

    def default(self, obj):
        for handler in self.get_handlers():
            if handler.is_match(obj):
                return handler.handle(obj)
        return super().default(obj)

    def dump(self, obj, fp: IO) -> None:
        for chunk in self.iterencode(obj):
            fp.write(chunk)

    def get_handlers(self) -> tuple[DefaultHandler, ...]:
        if self._handlers is None:
            return ALL_HANDLERS
        return tuple(self._handlers)

    def add_handlers(
        self, handlers: Union[DefaultHandler, Iterable[DefaultHandler]]
    ) -> None:
        if self._handlers is None:
            self._handlers = list(ALL_HANDLERS)
        if isinstance(handlers, DefaultHandler):
            self._handlers.append(handlers)
        else:
            self._handlers.extend(handlers)
        self._handlers.sort()

    def remove_handlers(
        self, match: Callable[[DefaultHandler], bool]
    ) -> tuple[DefaultHandler, ...]:
        if self._handlers is None:
            self._handlers = list(ALL_HANDLERS)

        matches = tuple(h for h in self._handlers if match(h))

        for h in matches:
            self._handlers.remove(h)

        return matches
