"""
Augmented switching laws: the symbolic shape of a trajectory, with no
durations.

Two kinds of item make up a law:

-   `SystemBehavior(k, sign)`: for `k == 0` an unconstrained arc with the
    control at `sign * M_0`; for `k >= 1` a constrained arc riding
    `x_k == sign * M_k`.
-   `TangentMarker(k, sign, degree)`: `x_k` grazes `sign * M_k` at an instant.
    `degree` is the order of the first derivative of `x_k` that does not
    vanish there: an even number below `k`, or `k` itself.

The ASCII form writes behaviors as `k+` / `k-` and markers as `(k±,h)`,
separated by whitespace.

##### Examples #####

```python
>>> law = AugmentedSwitchingLaw.parse("0+ 1+ 0- (3-,2) 0- 0+ 0-")
>>> law.items[3]
TangentMarker(k=3, sign=-1, degree=2)
>>> str(law)
'0+ 1+ 0- (3-,2) 0- 0+ 0-'

>>> AugmentedSwitchingLaw.parse("")
AugmentedSwitchingLaw(items=())

>>> AugmentedSwitchingLaw.parse("0+ 0-").items
(SystemBehavior(k=0, sign=1), SystemBehavior(k=0, sign=-1))

>>> AugmentedSwitchingLaw.parse("0+ (3-,1)")
Traceback (most recent call last):
  ...
chatterplan.errors.ParseError: tangent marker degree must be even and below
    k, or equal k; given (3-,1)

>>> AugmentedSwitchingLaw.parse("0+ x")
Traceback (most recent call last):
  ...
chatterplan.errors.ParseError: unrecognized token 'x'

```
"""

from __future__ import annotations
import dataclasses
import re
from typing import Iterable, Union

from chatterplan.errors import ParseError
from chatterplan.typings import Sign, as_sign

__all__ = [
    "SystemBehavior",
    "TangentMarker",
    "LawItem",
    "AugmentedSwitchingLaw",
    "asl_to_text",
    "parse_asl",
]

BEHAVIOR_RE = re.compile(r"^(\d+)([+-])$")
MARKER_RE = re.compile(r"^\((\d+)([+-]),(\d+)\)$")


def sign_char(sign: Sign) -> str:
    return "+" if sign > 0 else "-"


@dataclasses.dataclass(frozen=True)
class SystemBehavior:
    k: int
    sign: Sign

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ParseError(f"behavior index must be >= 0, given {self.k}")
        as_sign(self.sign)

    def __str__(self) -> str:
        return f"{self.k}{sign_char(self.sign)}"


@dataclasses.dataclass(frozen=True)
class TangentMarker:
    k: int
    sign: Sign
    degree: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ParseError(
                f"tangent marker index must be >= 1, given {self.k}"
            )
        as_sign(self.sign)
        if not is_valid_degree(self.k, self.degree):
            raise ParseError(
                "tangent marker degree must be even and below\n"
                f"    k, or equal k; given {self}"
            )

    def __str__(self) -> str:
        return f"({self.k}{sign_char(self.sign)},{self.degree})"


LawItem = Union[SystemBehavior, TangentMarker]


def is_valid_degree(k: int, degree: int) -> bool:
    return degree == k or (degree > 0 and degree % 2 == 0 and degree < k)


@dataclasses.dataclass(frozen=True)
class AugmentedSwitchingLaw:
    items: tuple[LawItem, ...] = ()

    @classmethod
    def parse(cls, text: str) -> AugmentedSwitchingLaw:
        return cls(tuple(parse_item(token) for token in text.split()))

    @classmethod
    def merged(cls, items: Iterable[LawItem]) -> AugmentedSwitchingLaw:
        """
        Build a law, collapsing runs of identical adjacent behaviors.

        ##### Examples #####

        ```python
        >>> str(AugmentedSwitchingLaw.merged([
        ...     SystemBehavior(0, 1),
        ...     SystemBehavior(0, 1),
        ...     SystemBehavior(3, 1),
        ...     SystemBehavior(3, 1),
        ...     SystemBehavior(0, -1),
        ... ]))
        '0+ 3+ 0-'

        ```
        """
        merged: list[LawItem] = []
        for item in items:
            if (
                merged
                and isinstance(item, SystemBehavior)
                and merged[-1] == item
            ):
                continue
            merged.append(item)
        return cls(tuple(merged))

    def __str__(self) -> str:
        return " ".join(str(item) for item in self.items)

    def __len__(self) -> int:
        return len(self.items)

    def behaviors(self) -> tuple[SystemBehavior, ...]:
        return tuple(i for i in self.items if isinstance(i, SystemBehavior))

    def markers(self) -> tuple[TangentMarker, ...]:
        return tuple(i for i in self.items if isinstance(i, TangentMarker))

    def to_json_encodable(self) -> str:
        return str(self)


def parse_item(token: str) -> LawItem:
    if match := BEHAVIOR_RE.match(token):
        return SystemBehavior(int(match[1]), as_sign(match[2]))
    if match := MARKER_RE.match(token):
        return TangentMarker(int(match[1]), as_sign(match[2]), int(match[3]))
    raise ParseError(f"unrecognized token {token!r}", token=token)


def asl_to_text(law: AugmentedSwitchingLaw) -> str:
    return str(law)


def parse_asl(text: str) -> AugmentedSwitchingLaw:
    return AugmentedSwitchingLaw.parse(text)
