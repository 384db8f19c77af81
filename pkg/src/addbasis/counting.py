"""Brute-force counters for h-fold sums over finite integer sets.

Every counter enumerates tuples or subsets directly, with feasibility
pruning only.  Elements of constructed sets grow geometrically, so
value-indexed dynamic programming and transform tricks are out; plain
enumeration over Python ints is exact at any magnitude and is the ground
truth the rest of the package is checked against.

All functions here are pure.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class FiniteSet:
    """Strictly increasing tuple of integers with set semantics."""

    elements: tuple[int, ...] = ()

    def __post_init__(self):
        elems = tuple(self.elements)
        if any(elems[i] >= elems[i + 1] for i in range(len(elems) - 1)):
            raise ValueError("elements must be strictly increasing")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def of(cls, iterable: Iterable[int]) -> "FiniteSet":
        return cls(tuple(sorted(set(iterable))))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, n: int) -> bool:
        i = bisect_left(self.elements, n)
        return i < len(self.elements) and self.elements[i] == n

    def union(self, items: Iterable[int]) -> "FiniteSet":
        return FiniteSet.of(self.elements + tuple(items))

    def translate(self, t: int) -> "FiniteSet":
        return FiniteSet(tuple(a + t for a in self.elements))

    def max_abs(self) -> int:
        if not self.elements:
            raise ValueError("empty set has no magnitude")
        return max(-self.elements[0], self.elements[-1])

    def count_between(self, lo: int, hi: int) -> int:
        """Number of elements a with lo <= a <= hi."""
        if hi < lo:
            return 0
        return bisect_right(self.elements, hi) - bisect_left(self.elements, lo)


@dataclass(frozen=True)
class RepHistogram:
    """Counts of order-h sums; the key set is exactly the h-fold sumset."""

    order: int
    counts: dict[int, int]

    def count(self, n: int) -> int:
        return self.counts.get(n, 0)

    def support(self) -> tuple[int, ...]:
        return tuple(self.counts)

    def mass(self) -> int:
        return sum(self.counts.values())


def _require_order(h: int) -> None:
    if h < 1:
        raise ValueError(f"order must be >= 1, got {h}")


def count_unordered(A: FiniteSet, h: int, n: int) -> int:
    """Number of nondecreasing h-tuples from A summing to n.

    Depth-first over the sorted elements.  A branch dies once the open
    slots cannot reach n from either side: with ``slots`` picks left, the
    reachable sums lie between slots * (current element) and slots * max(A).
    """
    _require_order(h)
    elems = A.elements
    if not elems:
        return 0
    top = elems[-1]

    def walk(start: int, slots: int, residue: int) -> int:
        if slots == 0:
            return 1 if residue == 0 else 0
        if slots * top < residue:
            return 0
        total = 0
        for j in range(start, len(elems)):
            v = elems[j]
            if slots * v > residue:
                break
            total += walk(j, slots - 1, residue - v)
        return total

    return walk(0, h, n)


def count_ordered(A: FiniteSet, h: int, n: int) -> int:
    """Number of ordered h-tuples from A summing to n.

    Walks multisets value by value, choosing a repeat count for each, and
    weighs every complete multiset by its number of arrangements.  Nothing
    of size h! is enumerated here; the direct ordered enumeration lives in
    the test suite as an independent oracle.
    """
    _require_order(h)
    elems = A.elements
    if not elems:
        return 0
    top = elems[-1]

    def walk(idx: int, slots: int, residue: int, ways: int) -> int:
        if slots == 0:
            return ways if residue == 0 else 0
        if idx == len(elems):
            return 0
        v = elems[idx]
        if slots * v > residue or slots * top < residue:
            return 0
        total = walk(idx + 1, slots, residue, ways)
        for reps in range(1, slots + 1):
            total += walk(idx + 1, slots - reps, residue - reps * v,
                          ways * math.comb(slots, reps))
        return total

    return walk(0, h, n, 1)


def count_restricted(A: FiniteSet, h: int, n: int) -> int:
    """Number of h-element subsets of A summing to n."""
    _require_order(h)
    if h > len(A):
        return 0
    return sum(1 for c in itertools.combinations(A.elements, h) if sum(c) == n)


def count_restricted_ordered(A: FiniteSet, h: int, n: int) -> int:
    """Number of ordered h-tuples of pairwise distinct elements summing to n.

    Enumerated directly over permutations, independent of count_restricted,
    so the factorial relation between the two is a real cross-check.
    """
    _require_order(h)
    if h > len(A):
        return 0
    return sum(1 for t in itertools.permutations(A.elements, h) if sum(t) == n)


def histogram(A: FiniteSet, h: int) -> RepHistogram:
    """Count every order-h sum, one pass over all multisets."""
    _require_order(h)
    if not A.elements:
        raise ValueError("histogram needs a nonempty set")
    counts: Counter[int] = Counter()
    for combo in itertools.combinations_with_replacement(A.elements, h):
        counts[sum(combo)] += 1
    return RepHistogram(h, dict(sorted(counts.items())))


def sidon_collision(A: FiniteSet, h: int) -> int | None:
    """Smallest sum with two or more order-h representations, else None.

    Builds the full histogram so a failure always carries a witness; use
    is_sidon_fast when only the verdict matters.
    """
    _require_order(h)
    if len(A) <= 1:
        return None
    for n, c in histogram(A, h).counts.items():
        if c > 1:
            return n
    return None


def is_sidon(A: FiniteSet, h: int) -> bool:
    """True iff every integer has at most one order-h representation."""
    return sidon_collision(A, h) is None


def is_sidon_fast(A: FiniteSet, h: int) -> bool:
    """Early-exit variant of is_sidon; same verdict, no witness."""
    _require_order(h)
    seen: set[int] = set()
    for combo in itertools.combinations_with_replacement(A.elements, h):
        s = sum(combo)
        if s in seen:
            return False
        seen.add(s)
    return True


def sidon_extension_bound(A: FiniteSet, h: int) -> int:
    """Magnitude threshold for collision-free adjunction.

    Any c with |c| strictly above (2h - 1) * max|a| keeps an order-h
    collision-free set collision-free.
    """
    _require_order(h)
    return (2 * h - 1) * A.max_abs()
