"""
Piecewise-constant control schedules.
"""

from __future__ import annotations
import dataclasses
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from chatterplan.errors import Infeasible, ParamOutOfRange
from chatterplan.typings import FloatArray, Number

__all__ = ["Segment", "PiecewiseControl"]


@dataclasses.dataclass(frozen=True)
class Segment:
    duration: float
    level: float

    def to_json_encodable(self) -> list[float]:
        return [self.duration, self.level]


SegmentCastable = Union[Segment, tuple[Number, Number], Sequence[Number]]


@dataclasses.dataclass(frozen=True)
class PiecewiseControl:
    """
    An ordered run of `(duration, level)` segments starting at `t0`.

    Durations must be strictly positive. `PiecewiseControl.of` drops
    zero-length pieces for you, which is handy when a planner computes a hold
    that happens to come out empty.

    ##### Examples #####

    ```python
    >>> pc = PiecewiseControl.of([(1.0, 1.0), (0.0, 0.5), (2.0, -1.0)])
    >>> len(pc)
    2
    >>> pc.duration
    3.0
    >>> pc.boundaries()
    array([0., 1., 3.])
    >>> pc.level_at(1.5)
    -1.0

    >>> PiecewiseControl.of([(-1.0, 1.0)])
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParamOutOfRange: segment durations must be positive,
        given -1.0

    ```

    Schedules compose, shift, scale and mirror:

    ```python
    >>> a = PiecewiseControl.of([(1.0, 1.0)])
    >>> b = PiecewiseControl.of([(2.0, -1.0)])
    >>> a.then(b).levels()
    array([ 1., -1.])

    >>> a.then(b).scaled(time=2.0, level=-3.0).segments
    (Segment(duration=2.0, level=-3.0), Segment(duration=4.0, level=3.0))

    >>> a.then(b).mirrored().segments
    (Segment(duration=2.0, level=1.0), Segment(duration=1.0, level=-1.0))

    ```
    """

    segments: tuple[Segment, ...] = ()
    t0: float = 0.0

    @classmethod
    def of(
        cls, pieces: Iterable[SegmentCastable], t0: Number = 0.0
    ) -> PiecewiseControl:
        segments = []
        for piece in pieces:
            if isinstance(piece, Segment):
                duration, level = piece.duration, piece.level
            else:
                duration, level = piece
            if duration < 0:
                raise ParamOutOfRange(
                    "segment durations must be positive,\n"
                    f"    given {float(duration)!r}",
                    duration=float(duration),
                )
            if duration > 0:
                segments.append(Segment(float(duration), float(level)))
        return cls(tuple(segments), float(t0))

    def __post_init__(self) -> None:
        for segment in self.segments:
            if not segment.duration > 0:
                raise ParamOutOfRange(
                    "segment durations must be positive,\n"
                    f"    given {segment.duration!r}",
                    duration=segment.duration,
                )

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    @property
    def duration(self) -> float:
        return float(sum(segment.duration for segment in self.segments))

    @property
    def t_end(self) -> float:
        return self.t0 + self.duration

    def durations(self) -> FloatArray:
        return np.array([s.duration for s in self.segments], dtype=np.float64)

    def levels(self) -> FloatArray:
        return np.array([s.level for s in self.segments], dtype=np.float64)

    def boundaries(self) -> FloatArray:
        """Start time, every switch time, end time."""
        return self.t0 + np.concatenate(([0.0], np.cumsum(self.durations())))

    def max_abs_level(self) -> float:
        if not self.segments:
            return 0.0
        return float(np.max(np.abs(self.levels())))

    def level_at(self, t: float) -> float:
        """
        Right-continuous level at `t`; the final level holds at the very end.
        """
        if not self.segments:
            return 0.0
        index = np.searchsorted(self.boundaries(), t, side="right") - 1
        index = int(np.clip(index, 0, len(self.segments) - 1))
        return self.segments[index].level

    def check_levels(self, m0: float, rtol: float = 1e-12) -> None:
        worst = self.max_abs_level()
        if worst > m0 * (1.0 + rtol):
            raise Infeasible(
                f"control level {worst!r} exceeds M_0 = {m0!r}",
                level=worst,
                m0=m0,
            )

    def then(self, other: PiecewiseControl) -> PiecewiseControl:
        return PiecewiseControl(self.segments + other.segments, self.t0)

    def shifted(self, t0: Number) -> PiecewiseControl:
        return PiecewiseControl(self.segments, float(t0))

    def scaled(
        self, *, time: Number = 1.0, level: Number = 1.0
    ) -> PiecewiseControl:
        if not time > 0:
            raise ParamOutOfRange(
                f"time scale must be positive, given {time!r}", time=time
            )
        return PiecewiseControl(
            tuple(
                Segment(s.duration * time, s.level * level)
                for s in self.segments
            ),
            self.t0 * time,
        )

    def mirrored(self) -> PiecewiseControl:
        """
        Reverse the segment order and negate levels. Running the mirror from
        a state's mirror image retraces the original backwards in time.
        """
        return PiecewiseControl(
            tuple(
                Segment(s.duration, -s.level) for s in reversed(self.segments)
            ),
            self.t0,
        )

    def truncated(self, t: float) -> PiecewiseControl:
        """
        The part of the schedule before time `t`.

        ##### Examples #####

        ```python
        >>> pc = PiecewiseControl.of([(1.0, 1.0), (2.0, -1.0)])
        >>> pc.truncated(2.0).segments
        (Segment(duration=1.0, level=1.0), Segment(duration=1.0, level=-1.0))

        >>> len(pc.truncated(0.0))
        0

        ```
        """
        segments = []
        start = self.t0
        for segment in self.segments:
            if t <= start:
                break
            duration = min(segment.duration, t - start)
            segments.append(Segment(duration, segment.level))
            start += segment.duration
        return PiecewiseControl(tuple(segments), self.t0)

    def switch_count(self) -> int:
        """Number of level changes between consecutive segments."""
        return sum(
            1
            for a, b in zip(self.segments, self.segments[1:])
            if a.level != b.level
        )

    def to_json_encodable(self) -> dict:
        return {
            "t0": self.t0,
            "segments": [s.to_json_encodable() for s in self.segments],
        }
