"""Exhaustive integer checks of the neighbour identities behind the
saturated-set constructions.

Each check walks every Farey order up to a bound and returns ``None`` when
all cases hold, otherwise a short description of the first counterexample.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .farey import farey_arrays, h_array, h_value


def neighbour_pairs(Q_max: int) -> np.ndarray:
    """Distinct pairs ``(a1, q1, a2, q2)`` consecutive in some ``F_Q``, ``Q <= Q_max``.

    Rows are sorted lexicographically.
    """
    if Q_max < 1:
        raise ValueError("Q_max must be >= 1")
    num, den = farey_arrays(Q_max)
    # a pair first becomes consecutive at the order equal to its larger denominator
    chunks = [np.array([[0, 1, 1, 1]])]
    for Q in range(2, Q_max + 1):
        m = den <= Q
        a, q = num[m], den[m]
        new = np.flatnonzero(q == Q)
        for i, j in ((new - 1, new), (new, new + 1)):
            chunks.append(np.stack([a[i], q[i], a[j], q[j]], axis=1))
    out = np.concatenate(chunks)
    return out[np.lexsort(out.T[::-1])]


def neighbour_identity_violation(a1: int, q1: int, a2: int, q2: int) -> str | None:
    """Check the four inverse/height identities for one pair with ``0 < a_i < q_i``."""
    ia1 = pow(a1, -1, q1)
    ia2 = pow(a2, -1, q2)
    iq2 = pow(q2, -1, q1)  # q2 mod q1, in [1, q1)
    iq1 = pow(q1, -1, q2)  # q1 mod q2, in [1, q2)
    checks = {
        "i.a": ia1 == (1 + q2 // q1) * q1 - q2,
        "i.b": ia2 == q1 - (q1 // q2) * q2,
        "ii.a": a1 == q1 - iq2,
        "ii.b": a2 == iq1,
        "ii.c": (q1 * iq1 - 1) % q2 == 0 and a1 == (q1 * iq1 - 1) // q2,
        "ii.d": (q2 * iq2 - 1) % q1 == 0 and a2 == q2 - (q2 * iq2 - 1) // q1,
        "iii": h_value(Fraction(a1, q1)) == (2 + q2 // q1) * q1 - q2 + (q1 * iq1 - 1) // q2,
        "iv": h_value(Fraction(a2, q2)) == q1 + (2 - q1 // q2) * q2 - (q2 * iq2 - 1) // q1,
    }
    bad = [k for k, ok in checks.items() if not ok]
    return ",".join(bad) if bad else None


def check_neighbour_identities(Q_max: int) -> str | None:
    for a1, q1, a2, q2 in neighbour_pairs(Q_max).tolist():
        if not (0 < a1 < q1 and 0 < a2 < q2):
            continue
        bad = neighbour_identity_violation(a1, q1, a2, q2)
        if bad:
            return f"{a1}/{q1} < {a2}/{q2}: identity {bad} fails"
    return None


def check_height_transfer(Q_max: int) -> str | None:
    """For consecutive ``a1/q1 < a2/q2`` in ``F_Q``: ``q1 < q2`` forces
    ``h(a2/q2) > Q``, and ``q2 < q1`` with ``h(a1/q1) <= Q`` forces ``h(a2/q2) <= Q``."""
    num, den = farey_arrays(Q_max)
    h = h_array(num, den)
    for Q in range(2, Q_max + 1):
        m = den <= Q
        q, hq, a = den[m], h[m], num[m]
        q1, q2, h1, h2 = q[:-1], q[1:], hq[:-1], hq[1:]
        bad_i = np.flatnonzero((q1 < q2) & (h2 <= Q))
        bad_ii = np.flatnonzero((q2 < q1) & (h1 <= Q) & (h2 > Q))
        for part, bad in (("i", bad_i), ("ii", bad_ii)):
            if bad.size:
                j = int(bad[0])
                return f"Q={Q}: {a[j]}/{q[j]} < {a[j + 1]}/{q[j + 1]} breaks part {part}"
    return None


def check_mediant_height(q_sum_max: int) -> str | None:
    """For unimodular ``a1/q1 < a2/q2`` with ``0 <= a_i < q_i`` and
    ``q1 + q2 <= q_sum_max``, the mediant is born strictly later than both."""
    pairs = neighbour_pairs(max(1, q_sum_max - 1))
    for a1, q1, a2, q2 in pairs.tolist():
        if q1 + q2 > q_sum_max or a2 >= q2:
            continue
        f1, f2, m = Fraction(a1, q1), Fraction(a2, q2), Fraction(a1 + a2, q1 + q2)
        if not h_value(m) > max(h_value(f1), h_value(f2)):
            return f"{f1} < {f2}: h(mediant)={h_value(m)}"
    return None
