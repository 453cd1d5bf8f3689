import logging
from collections.abc import Callable, Hashable, Iterator, Sequence
from dataclasses import dataclass
from math import lcm

from utils.exceptions import TripleToolkitError

logger = logging.getLogger(__name__)


class InvalidSequence(TripleToolkitError):
    default_detail = "Eventually periodic sequences need a nonempty period."
    default_code = "invalid_sequence"


def _primitive_root(period: tuple) -> tuple:
    n = len(period)
    for size in range(1, n + 1):
        if n % size == 0 and period[:size] * (n // size) == period:
            return period[:size]
    return period


@dataclass(frozen=True)
class EventuallyPeriodic:
    """
    A sequence indexed from 1, given by a finite prefix followed by a period
    repeated forever.

    Instances are kept in canonical form (shortest prefix, primitive period),
    so equality of instances is equality of the sequences they denote.
    """

    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise InvalidSequence()
        prefix = tuple(self.prefix)
        period = _primitive_root(tuple(self.period))
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = (period[-1],) + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def constant(cls, value: Hashable) -> "EventuallyPeriodic":
        return cls((), (value,))

    @classmethod
    def of(cls, prefix: Sequence, period: Sequence) -> "EventuallyPeriodic":
        return cls(tuple(prefix), tuple(period))

    @property
    def threshold(self) -> int:
        return len(self.prefix)

    def at(self, index: int):
        if index < 1:
            raise IndexError(f"Sequence index must be >= 1, got {index}")
        if index <= len(self.prefix):
            return self.prefix[index - 1]
        return self.period[(index - len(self.prefix) - 1) % len(self.period)]

    def values(self) -> set:
        return set(self.prefix) | set(self.period)

    def take(self, count: int) -> Iterator:
        for index in range(1, count + 1):
            yield self.at(index)

    def map(self, func: Callable) -> "EventuallyPeriodic":
        return EventuallyPeriodic(
            tuple(func(v) for v in self.prefix), tuple(func(v) for v in self.period)
        )

    def zip_with(
        self, other: "EventuallyPeriodic", func: Callable
    ) -> "EventuallyPeriodic":
        """
        Pointwise combination of two sequences.
        """
        threshold = max(self.threshold, other.threshold)
        period = lcm(len(self.period), len(other.period))
        combined = [func(self.at(i), other.at(i)) for i in range(1, threshold + period + 1)]
        return EventuallyPeriodic(tuple(combined[:threshold]), tuple(combined[threshold:]))

    def checkpoints(self, *others: "EventuallyPeriodic") -> range:
        """
        Indices that decide any pointwise statement about this sequence and
        ``others`` together.
        """
        threshold = max([self.threshold] + [o.threshold for o in others])
        period = lcm(len(self.period), *[len(o.period) for o in others])
        return range(1, threshold + period + 1)

    def as_dict(self, render: Callable = str) -> dict:
        return {
            "prefix": [render(v) for v in self.prefix],
            "period": [render(v) for v in self.period],
        }

    def __str__(self):
        head = ",".join(str(v) for v in self.prefix)
        cycle = ",".join(str(v) for v in self.period)
        return f"[{head}]({cycle})*"
