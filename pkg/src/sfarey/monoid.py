"""The matrix monoid of positive SL(2, Z) matrices ``a >= b >= d >= 1, a >= c >= d``.

Matrices are 4-tuples ``(a, b, c, d)`` read row by row.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .farey import farey_arrays, inverse_array, mod_inverse, to_rational


class MonoidMatrix(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c


def is_in_S(a: int, b: int, c: int, d: int) -> bool:
    return a * d - b * c == 1 and a >= b >= d >= 1 and a >= c >= d


def _require_S(M: Sequence[int]) -> MonoidMatrix:
    M = MonoidMatrix(*M)
    if not is_in_S(*M):
        raise ValueError(f"{tuple(M)} is not in the monoid")
    return M


def psi(M: Sequence[int]) -> Fraction:
    """``(a, b; c, d) -> d/b``."""
    M = _require_S(M)
    return Fraction(M.d, M.b)


def _bar(d: int, b: int) -> int:
    # b = 1 only for d/b = 1/1; taking inv = 1 keeps the lift formula valid
    return 1 if b == 1 else mod_inverse(d, b)


def matrix_from_fraction(f: Fraction, k: int = 1) -> MonoidMatrix:
    """The k-th matrix over ``d/b``: ``(inv + k b, b; (d inv - 1)/b + k d, d)``.

    Its trace is ``d + inv + k b``; for k = 1 that is the h-value of ``f``.
    """
    if not 0 < f <= 1:
        raise ValueError(f"need 0 < f <= 1, got {f}")
    if k < 1:
        raise ValueError("k must be >= 1")
    d, b = f.numerator, f.denominator
    dbar = _bar(d, b)
    return MonoidMatrix(dbar + k * b, b, (d * dbar - 1) // b + k * d, d)


def enumerate_S_Q(Q: int) -> Iterator[MonoidMatrix]:
    """Every monoid matrix of trace at most Q, each exactly once.

    Ordered by ``b``, then ``d``, then ``k``.
    """
    if Q < 3:
        raise ValueError("Q must be >= 3")
    for b in range(1, Q + 1):
        for d in range(1, b + 1):
            if math.gcd(d, b) != 1:
                continue
            dbar = _bar(d, b)
            c0 = (d * dbar - 1) // b
            k = 1
            while d + dbar + k * b <= Q:
                yield MonoidMatrix(dbar + k * b, b, c0 + k * d, d)
                k += 1


def psi_image(Q: int) -> list[Fraction]:
    """The set ``Psi(S_Q)`` in increasing order."""
    return sorted({psi(M) for M in enumerate_S_Q(Q)})


def least_traces(Q_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(num, den, trace)`` over ``Psi(S_{Q_max})`` sorted by value, with the
    least trace of a matrix above each fraction.

    ``Psi(S_Q)`` for any ``Q <= Q_max`` is the mask ``trace <= Q``.
    """
    best: dict[tuple[int, int], int] = {}
    for M in enumerate_S_Q(Q_max):
        key = (M.d, M.b)
        if M.trace < best.get(key, Q_max + 1):
            best[key] = M.trace
    keys = sorted(best, key=lambda k: Fraction(*k))
    num = np.array([k[0] for k in keys], dtype=np.int64)
    den = np.array([k[1] for k in keys], dtype=np.int64)
    return num, den, np.array([best[k] for k in keys], dtype=np.int64)


def brute_force_S_Q(Q: int) -> list[MonoidMatrix]:
    """Quadruple loop over all entries up to Q; only for small Q."""
    out = []
    for a in range(1, Q + 1):
        for d in range(1, Q - a + 1):
            for b in range(d, a + 1):
                for c in range(d, a + 1):
                    if a * d - b * c == 1:
                        out.append(MonoidMatrix(a, b, c, d))
    return out


def count_S_Q_below(Q: int, beta: Fraction) -> int:
    """``#{M in S_Q : d/b <= beta}`` for a rational ``beta`` in [0, 1].

    Counts the admissible k for each ``(d, b)`` instead of materialising the
    matrices; the k-range is ``1 <= k <= (Q - d - inv(d)) / b``.
    """
    if Q < 3:
        raise ValueError("Q must be >= 3")
    beta = to_rational(beta)
    num, den = farey_arrays(Q)
    inv = inverse_array(num, den)
    m = (num >= 1) & (num * beta.denominator <= beta.numerator * den)
    kmax = (Q - num[m] - inv[m]) // den[m]
    return int(np.clip(kmax, 0, None).sum())


def _cf_digits(x: int, y: int) -> list[int]:
    digits = []
    while y:
        t, r = divmod(x, y)
        digits.append(t)
        x, y = y, r
    return digits


def cf_compose(digits: Sequence[int]) -> MonoidMatrix:
    """Left-to-right product of ``(a_i 1; 1 0)``."""
    if not digits or len(digits) % 2 or min(digits) < 1:
        raise ValueError(f"need an even-length word of positive digits, got {digits}")
    p, q, r, s = 1, 0, 0, 1
    for t in digits:
        p, q, r, s = p * t + q, p, r * t + s, r
    return MonoidMatrix(p, q, r, s)


def cf_factorize(M: Sequence[int]) -> list[int]:
    """Unique even-length word whose product is ``M``.

    The first column ``(a, c)`` gives ``a/c = [a_1; a_2, ..., a_2r]``; Euclid
    produces the short expansion and the last digit is split as
    ``t -> (t - 1, 1)`` when the length comes out odd.
    """
    M = _require_S(M)
    digits = _cf_digits(M.a, M.c)
    if len(digits) % 2:
        if digits[-1] < 2:
            raise ValueError(f"cannot reach even length for {tuple(M)}")
        digits[-1:] = [digits[-1] - 1, 1]
    if min(digits) < 1 or cf_compose(digits) != M:
        raise ValueError(f"factorization of {tuple(M)} failed: {digits}")
    return digits


def farey_continuant(xs: Sequence[int]) -> int:
    """``K_l = x_l K_{l-1} - K_{l-2}`` with ``K_{-1} = 0``, ``K_0 = 1``."""
    prev, cur = 0, 1
    for x in xs:
        prev, cur = cur, x * cur - prev
    return cur
