"""Exact gap statistics of saturated sets.

Runs: two saturated fractions that are consecutive *within the saturated set*
are separated in the Farey sequence of the same order by ``r - 1``
unsaturated fractions, ``r >= 1``.  A run is kept with its Farey step count
``r``, its endpoints and its exact width ``cross / (q_i q_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..farey import farey_arrays, h_array, to_rational
from ..saturated import generate_by_filter


@dataclass(frozen=True)
class GapTable:
    """Sorted gaps of ``SF_Q`` scaled by ``N = #SF_Q`` (N - 1 of them)."""

    Q: int
    N: int
    gaps: np.ndarray

    def cdf(self, lam) -> np.ndarray:
        """``G_Q(lam) = #{gaps <= lam} / N``; vectorised over ``lam``."""
        return np.searchsorted(self.gaps, np.asarray(lam, dtype=float), side="right") / self.N


def gap_table(Q: int) -> GapTable:
    if Q < 4:
        raise ValueError("Q must be >= 4")
    seq = generate_by_filter(Q)
    num, den = seq.num[1:], seq.den[1:]
    cross = num[1:] * den[:-1] - num[:-1] * den[1:]
    raw = cross / (den[:-1] * den[1:])
    N = num.size
    return GapTable(Q, N, np.sort(raw * N))


def empirical_gap_cdf(Q: int, lambdas: Iterable[float]) -> list[tuple[float, float]]:
    lambdas = [float(x) for x in lambdas]
    table = gap_table(Q)
    return list(zip(lambdas, table.cdf(lambdas).tolist()))


class FareyFamily:
    """Farey sequences of every order up to ``Q_max`` as masks of one array."""

    def __init__(self, Q_max: int):
        self.Q_max = Q_max
        self.num, self.den = farey_arrays(Q_max)
        self.h = h_array(self.num, self.den)

    def runs(self, Q: int) -> "RunTable":
        if Q > self.Q_max:
            raise ValueError(f"Q={Q} exceeds family bound {self.Q_max}")
        m = self.den <= Q
        return RunTable.build(Q, self.num[m], self.den[m], self.h[m])


@dataclass(frozen=True)
class RunTable:
    """All runs between consecutive saturated elements inside ``F_Q``.

    ``left``/``right`` index the Farey arrays; ``num``/``den`` are the
    Farey arrays themselves.
    """

    Q: int
    num: np.ndarray
    den: np.ndarray
    left: np.ndarray
    right: np.ndarray

    @classmethod
    def build(cls, Q: int, num: np.ndarray, den: np.ndarray, h: np.ndarray) -> "RunTable":
        sat = np.flatnonzero((h <= Q) & (num > 0))
        return cls(Q, num, den, sat[:-1], sat[1:])

    @classmethod
    def of_order(cls, Q: int) -> "RunTable":
        num, den = farey_arrays(Q)
        return cls.build(Q, num, den, h_array(num, den))

    @property
    def steps(self) -> np.ndarray:
        return self.right - self.left

    def cross(self) -> np.ndarray:
        i, j = self.left, self.right
        return self.num[j] * self.den[i] - self.num[i] * self.den[j]

    def within(self, eta) -> np.ndarray:
        """Mask of runs whose width is at most ``eta / Q^2``.

        Float comparison first; anything within 1e-9 relative of the
        threshold is re-decided in exact integer arithmetic.
        """
        i, j = self.left, self.right
        cross = self.cross()
        qq = self.den[i] * self.den[j]
        Q2 = float(self.Q) ** 2
        lhs = cross * Q2
        rhs = float(eta) * qq
        ok = lhs <= rhs
        close = np.flatnonzero(np.abs(lhs - rhs) <= 1e-9 * rhs)
        if close.size:
            e = to_rational(eta) if not isinstance(eta, Fraction) else eta
            for t in close.tolist():
                c, p = int(cross[t]), int(qq[t])
                ok[t] = c * self.Q**2 * e.denominator <= e.numerator * p
        return ok

    def count(self, r: int, eta) -> int:
        """``#H_{Q,r}(eta)``."""
        if r < 1 or r >= eta:
            return 0
        return int(np.count_nonzero((self.steps == r) & self.within(eta)))

    def nu_of_two_step_runs(self) -> np.ndarray:
        """``floor((Q + q_1)/q_2)`` for every run with exactly one unsaturated interior point."""
        i = self.left[self.steps == 2]
        return (self.Q + self.den[i]) // self.den[i + 1]


def enumerate_H(Q: int, r: int, eta) -> int:
    """Count saturated ``a_1/q_1`` followed, r Farey steps later, by the next
    saturated fraction, with total gap at most ``eta / Q^2``."""
    if Q < 4:
        raise ValueError("Q must be >= 4")
    if r < 1 or r >= eta:
        return 0
    return RunTable.of_order(Q).count(r, eta)


def h_table(Q: int, rs: Sequence[int], etas: Sequence) -> list[tuple[int, int, object, int]]:
    """``(Q, r, eta, count)`` for every pair, sharing one Farey walk."""
    runs = RunTable.of_order(Q)
    return [(Q, r, eta, runs.count(r, eta)) for r in rs for eta in etas]
