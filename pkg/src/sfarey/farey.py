"""Exact integer arithmetic on reduced fractions in [0, 1].

Fractions are plain :class:`fractions.Fraction` values.  The bulk helpers at
the bottom of the module work on parallel ``int64`` numpy arrays of
numerators and denominators, which is what every large-Q computation in the
package runs on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

import numpy as np

ZERO = Fraction(0, 1)
ONE = Fraction(1, 1)


MAX_DEN = 10**6


def to_rational(x, max_den: int = MAX_DEN) -> Fraction:
    """Exact rational for a threshold in [0, 1].

    Floats are snapped to the nearest fraction with denominator <= max_den.
    """
    if isinstance(x, float):
        r = Fraction(x).limit_denominator(max_den)
    elif isinstance(x, str):
        r = Fraction(x.strip())
    else:
        r = Fraction(x)
    if r.denominator > 10**9:
        raise ValueError(f"denominator of {r} is too large for exact counting")
    return r


def _check_unit(f: Fraction) -> None:
    if not 0 <= f <= 1:
        raise ValueError(f"fraction {f} lies outside [0, 1]")


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        t = a // b
        a, b = b, a - t * b
        x0, x1 = x1, x0 - t * x1
        y0, y1 = y1, y0 - t * y1
    return a, x0, y0


def mod_inverse(a: int, q: int) -> int:
    """Inverse of ``a`` modulo ``q``, normalised into ``[1, q)``.

    Moduli are arbitrary (not prime), so this goes through extended Euclid.
    """
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")
    if not 1 <= a < q:
        raise ValueError(f"need 1 <= a < q, got a={a}, q={q}")
    g, x, _ = egcd(a, q)
    if g != 1:
        raise ValueError(f"{a} is not invertible mod {q} (gcd={g})")
    return x % q


def h_value(f: Fraction) -> int:
    """The smallest order Q with ``f`` in the saturated set: ``q + a + inv(a)``.

    ``0/1`` and ``1/1`` are pinned to 1 and 3.
    """
    _check_unit(f)
    if f == 0:
        return 1
    if f == 1:
        return 3
    a, q = f.numerator, f.denominator
    return q + a + mod_inverse(a, q)


def is_unimodular(f1: Fraction, f2: Fraction) -> bool:
    return f2.numerator * f1.denominator - f1.numerator * f2.denominator == 1


def mediant(f1: Fraction, f2: Fraction) -> Fraction:
    if not is_unimodular(f1, f2):
        raise ValueError(f"{f1} < {f2} is not a unimodular pair")
    return Fraction(f1.numerator + f2.numerator, f1.denominator + f2.denominator)


def next_farey(Q: int, prev: Fraction, cur: Fraction) -> Fraction:
    """Successor of ``cur`` in the Farey sequence of order ``Q``.

    ``prev`` must be the predecessor of ``cur`` in the same sequence.
    """
    if cur == 1:
        raise ValueError("1/1 has no successor")
    nu = (Q + prev.denominator) // cur.denominator
    return Fraction(
        nu * cur.numerator - prev.numerator, nu * cur.denominator - prev.denominator
    )


def farey_walk(Q: int) -> Iterator[tuple[int, int]]:
    """Yield ``(a, q)`` for every element of the Farey sequence of order Q."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    a, b, c, d = 0, 1, 1, Q
    yield a, b
    while c <= Q:
        yield c, d
        nu = (Q + b) // d
        a, b, c, d = c, d, nu * c - a, nu * d - b


def is_saturated(f: Fraction, Q: int) -> bool:
    if not 0 < f <= 1:
        raise ValueError(f"{f} is outside (0, 1]")
    return f.denominator <= Q and h_value(f) <= Q


# ---------------------------------------------------------------------------
# array helpers


def farey_arrays(Q: int) -> tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators of the Farey sequence of order Q, sorted.

    Built per-denominator with ``np.gcd`` and sorted by float value; distinct
    elements differ by at least ``1/Q**2`` so the float sort is exact for any
    Q this package will see.
    """
    if Q < 1:
        raise ValueError("Q must be >= 1")
    nums = [np.array([0, 1], dtype=np.int64)]
    dens = [np.array([1, 1], dtype=np.int64)]
    for q in range(2, Q + 1):
        a = np.arange(1, q, dtype=np.int64)
        a = a[np.gcd(a, q) == 1]
        nums.append(a)
        dens.append(np.full(a.size, q, dtype=np.int64))
    num = np.concatenate(nums)
    den = np.concatenate(dens)
    order = np.argsort(num / den, kind="stable")
    return num[order], den[order]


def inverse_array(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Inverses ``inv(a) mod q`` in ``[1, q)`` for a sorted Farey array.

    Uses the successor: ``a' q - a q' = 1`` gives ``inv(a) = -q' mod q``.
    Entries for ``0/1`` and ``1/1`` are set to 0 and 1 so that
    ``den + num + inverse`` reproduces the pinned h-values 1 and 3.
    """
    inv = np.empty_like(den)
    inv[:-1] = (-den[1:]) % den[:-1]
    inv[-1] = 1
    inv[den == 1] = np.where(num[den == 1] == 0, 0, 1)
    return inv


def h_array(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """h-values for every element of a sorted Farey array."""
    return den + num + inverse_array(num, den)
