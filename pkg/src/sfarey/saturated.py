"""Saturated Farey sets and the mediant-insertion construction.

A saturated sequence of order Q is ``{0/1}`` followed by every reduced
``a/q`` in ``(0, 1]`` whose h-value is at most Q, in increasing order.  Two
independent constructions live here: filtering the Farey sequence by h, and
growing the set from ``{0/1, 1/1}`` by inserting mediants in order of birth.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .farey import ONE, ZERO, farey_arrays, h_array, h_value, mediant


@dataclass(frozen=True, eq=False)
class SaturatedSequence:
    """Ordered elements ``0/1 < ... < 1/1`` of a saturated set plus its order.

    Stored as parallel int64 arrays; the constructor does not validate, so a
    deliberately broken sequence can be handed to :func:`verify_unimodular`.
    """

    order: int
    num: np.ndarray
    den: np.ndarray

    @classmethod
    def from_fractions(cls, order: int, elems: Iterable[Fraction]) -> "SaturatedSequence":
        elems = list(elems)
        num = np.array([f.numerator for f in elems], dtype=np.int64)
        den = np.array([f.denominator for f in elems], dtype=np.int64)
        return cls(order, num, den)

    def __len__(self) -> int:
        return int(self.num.size)

    def __iter__(self) -> Iterator[Fraction]:
        for a, q in zip(self.num.tolist(), self.den.tolist()):
            yield Fraction(a, q)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SaturatedSequence):
            return NotImplemented
        return (
            self.order == other.order
            and np.array_equal(self.num, other.num)
            and np.array_equal(self.den, other.den)
        )

    def fractions(self) -> list[Fraction]:
        return list(self)

    @property
    def size(self) -> int:
        """N(Q): number of elements excluding the leading 0/1."""
        return len(self) - 1

    def h_values(self) -> np.ndarray:
        return h_array(self.num, self.den)

    def rows(self) -> list[tuple[int, int, int]]:
        """``(num, den, h)`` rows in ascending order, for CSV export."""
        h = self.h_values()
        return list(zip(self.num.tolist(), self.den.tolist(), h.tolist()))


@dataclass(frozen=True)
class InsertionRecord:
    fraction: Fraction
    birth: int
    left_parent: Fraction
    right_parent: Fraction

    def row(self) -> tuple[int, ...]:
        f, lp, rp = self.fraction, self.left_parent, self.right_parent
        return (
            f.numerator, f.denominator, self.birth,
            lp.numerator, lp.denominator, rp.numerator, rp.denominator,
        )


def _check_order(Q: int, least: int = 3) -> None:
    if Q < least:
        raise ValueError(f"order must be >= {least}, got {Q}")


class SaturatedFamily:
    """All saturated sequences of order ``3..Q_max`` from one Farey array.

    h depends only on the fraction, so the sequence of order Q is just the
    mask ``h <= Q`` over the sorted elements with ``h <= Q_max``.
    """

    def __init__(self, Q_max: int):
        _check_order(Q_max)
        num, den = farey_arrays(Q_max)
        h = h_array(num, den)
        keep = h <= Q_max
        self.Q_max = Q_max
        self.num = num[keep]
        self.den = den[keep]
        self.h = h[keep]

    def sequence(self, Q: int) -> SaturatedSequence:
        _check_order(Q)
        if Q > self.Q_max:
            raise ValueError(f"Q={Q} exceeds family bound {self.Q_max}")
        m = self.h <= Q
        return SaturatedSequence(Q, self.num[m], self.den[m])

    def __iter__(self) -> Iterator[SaturatedSequence]:
        for Q in range(3, self.Q_max + 1):
            yield self.sequence(Q)


def generate_by_filter(Q: int) -> SaturatedSequence:
    """Keep the Farey fractions of order Q whose h-value is at most Q."""
    _check_order(Q)
    num, den = farey_arrays(Q)
    m = h_array(num, den) <= Q
    return SaturatedSequence(Q, num[m], den[m])


def _insertion(Q: int) -> tuple[dict[Fraction, Fraction], list[InsertionRecord]]:
    succ = {ZERO: ONE}
    records = []
    first = mediant(ZERO, ONE)
    heap = [(h_value(first), first, ZERO, ONE)]
    while heap and heap[0][0] <= Q:
        birth, f, left, right = heapq.heappop(heap)
        succ[left] = f
        succ[f] = right
        records.append(InsertionRecord(f, birth, left, right))
        for lo, hi in ((left, f), (f, right)):
            child = mediant(lo, hi)
            heapq.heappush(heap, (h_value(child), child, lo, hi))
    return succ, records


def generate_by_insertion(Q: int) -> SaturatedSequence:
    """Grow the sequence from ``{0/1, 1/1}`` by mediant insertion.

    A mediant is born at its h-value, which always exceeds the births of its
    parents, so popping candidates in birth order never inserts a child
    before its parents are neighbours.
    """
    _check_order(Q)
    succ, _ = _insertion(Q)
    elems = [ZERO]
    while elems[-1] != ONE:
        elems.append(succ[elems[-1]])
    return SaturatedSequence.from_fractions(Q, elems)


def insertion_sweep(Q_max: int) -> Iterator[SaturatedSequence]:
    """The insertion-built sequences of orders ``3..Q_max`` from a single run.

    Insertion never reorders elements, so each order is the final linked
    list restricted to births at most Q.
    """
    _check_order(Q_max)
    succ, records = _insertion(Q_max)
    birth = {ZERO: 1, ONE: 3}
    birth.update((rec.fraction, rec.birth) for rec in records)
    elems = [ZERO]
    while elems[-1] != ONE:
        elems.append(succ[elems[-1]])
    num = np.array([f.numerator for f in elems], dtype=np.int64)
    den = np.array([f.denominator for f in elems], dtype=np.int64)
    born = np.array([birth[f] for f in elems], dtype=np.int64)
    for Q in range(3, Q_max + 1):
        m = born <= Q
        yield SaturatedSequence(Q, num[m], den[m])


def insertion_tree(Q_max: int) -> list[InsertionRecord]:
    """Insertion records with birth <= Q_max, ordered by (birth, value)."""
    _check_order(Q_max, 4)
    return _insertion(Q_max)[1]


def cross_determinants(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    return num[1:] * den[:-1] - num[:-1] * den[1:]


def verify_unimodular(seq: SaturatedSequence) -> tuple[bool, int | None]:
    """Check ``a' q - a q' == 1`` for every adjacent pair.

    Returns ``(True, None)`` or ``(False, i)`` where ``i`` is the position of
    the right-hand element of the first failing pair.
    """
    bad = np.flatnonzero(cross_determinants(seq.num, seq.den) != 1)
    if bad.size:
        return False, int(bad[0]) + 1
    return True, None
