"""Streams that enumerate the integers with prescribed multiplicities.

The sweep enumeration lists 0, -1, 0, 1, -2, -1, 0, 1, 2, -3, ...: block s
sweeps the integers from -s to s, so every integer n reappears once per
block of radius >= |n|.  Filtering that enumeration by the occurrence
budget of a target function yields a stream in which each integer n is
emitted exactly target.eval(n) times, and the k-th emitted term never
exceeds (k + z) // 2 in absolute value, where z is the number of integers
the target maps to zero.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .targets import TargetFunction, is_infinite


class SweepIndex(NamedTuple):
    m: int        # 1-based position in the sweep enumeration
    radius: int   # block number
    offset: int   # signed position inside the block; the listed value


class StreamTerm(NamedTuple):
    rank: int     # 1-based position in the filtered stream
    index: int    # sweep position the term came from
    value: int


def sweep_decompose(m: int) -> SweepIndex:
    """Invert the sweep enumeration: m = radius**2 + radius + 1 + offset.

    The decomposition with |offset| <= radius is unique: block s occupies
    positions s**2 + 1 (value -s) through (s + 1)**2 (value +s).
    """
    if m < 1:
        raise ValueError(f"sweep positions start at 1, got {m}")
    radius = math.isqrt(m - 1)
    offset = m - (radius * radius + radius + 1)
    return SweepIndex(m, radius, offset)


class RealizationStream:
    """Resumable cursor over the multiplicity-realizing stream of a target.

    The sweep term at (radius, offset) is the (radius - |offset| + 1)-th
    visit to the integer ``offset``; it is kept iff that visit number is
    within the target's required count (an infinite count keeps every
    visit).  Deterministic in the target alone.  Single owner: advance with
    take(); may be handed between threads but not shared.
    """

    def __init__(self, target: TargetFunction):
        self.target = target
        self.emitted = 0
        self._next_index = 1

    def take(self) -> StreamTerm:
        while True:
            idx = sweep_decompose(self._next_index)
            self._next_index += 1
            visit = idx.radius - abs(idx.offset) + 1
            if visit <= self.target.eval(idx.offset):
                self.emitted += 1
                return StreamTerm(self.emitted, idx.m, idx.offset)


def realization_prefix(target: TargetFunction, count: int) -> list[int]:
    """First ``count`` values of the realizing stream for ``target``."""
    if count < 0:
        raise ValueError("count must be >= 0")
    stream = RealizationStream(target)
    return [stream.take().value for _ in range(count)]


def growth_bound(rank: int, zero_count: int) -> int:
    """Largest |value| the stream may emit at the given rank."""
    return (rank + zero_count) // 2


def prefix_respects_bound(target: TargetFunction, count: int) -> bool:
    """Self-check: |value| at each rank k stays within (k + zeros) // 2."""
    zeros = target.zero_count()
    prefix = realization_prefix(target, count)
    return all(abs(v) <= growth_bound(k, zeros) for k, v in enumerate(prefix, 1))


def final_occurrence_rank(target: TargetFunction, value: int) -> int | None:
    """Stream rank of the last emission of ``value``.

    None when the value is never emitted (count zero) or never stops
    (infinite count).  The last emission happens at sweep radius
    |value| + count - 1.
    """
    needed = target.eval(value)
    if needed == 0 or is_infinite(needed):
        return None
    last_radius = abs(value) + needed - 1
    last_index = last_radius * last_radius + last_radius + 1 + value
    stream = RealizationStream(target)
    while True:
        term = stream.take()
        if term.index == last_index:
            return term.rank
        if term.index > last_index:
            raise AssertionError("final occurrence was skipped by the stream")


def extremal_target(zero_count: int) -> TargetFunction:
    """Target with the given number of zeros packed around the origin.

    Zero window [-d, d] when zero_count = 2d + 1, [-d, d - 1] when
    zero_count = 2d; required count 1 everywhere else.  Paired with
    extremal_prefix these hit the stream growth bound with equality.
    """
    if zero_count < 0:
        raise ValueError("zero_count must be >= 0")
    if zero_count == 0:
        return TargetFunction.constant(1)
    if zero_count % 2:
        d = (zero_count - 1) // 2
        lo, hi = -d, d
    else:
        d = zero_count // 2
        lo, hi = -d, d - 1
    return TargetFunction(lo, hi, {n: 0 for n in range(lo, hi + 1)}, 1)


def extremal_prefix(zero_count: int, count: int) -> list[int]:
    """A realization of extremal_target(zero_count) with |value| equal to
    the growth bound at every rank.

    A different valid ordering from the canonical stream: each magnitude's
    positive value comes first.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    out: list[int] = []
    if zero_count % 2 == 0:
        d = zero_count // 2
        out.append(d)
    else:
        d = (zero_count - 1) // 2
    i = 1
    while len(out) < count:
        out.append(d + i)
        out.append(-(d + i))
        i += 1
    return out[:count]
