"""Areas of the planar regions whose w-integrals give the constants C_r(eta).

All three region families share one shape: for fixed ``w`` the region is
``{(u, v): u in I, max(lowers(u)) <= v <= min(uppers(u))}`` where, on each
piece of ``I`` between floor jumps, every bound is a linear-fractional
function ``(a u + b) / (c u + d)``.  :func:`band_area` integrates such a band
exactly by cutting at every pairwise crossing of the bounds and using the
closed-form antiderivative on each cut.

Linear-fractional functions are rows ``(a, b, c, d)`` of a float array.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.optimize import brentq

log = logging.getLogger(__name__)


def lf(a: float, b: float, c: float = 0.0, d: float = 1.0) -> tuple[float, float, float, float]:
    return (float(a), float(b), float(c), float(d))


def lf_eval(F: np.ndarray, u) -> np.ndarray:
    """Evaluate every row of ``F`` at every point of ``u``; shape ``(rows, points)``."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    a, b, c, d = (F[:, k, None] for k in range(4))
    return (a * u + b) / (c * u + d)


def lf_integral(f, u0: np.ndarray, u1: np.ndarray) -> np.ndarray:
    """Exact integral of rows ``f`` (shape ``(n, 4)``) over ``[u0, u1]`` row-wise."""
    a, b, c, d = f[:, 0], f[:, 1], f[:, 2], f[:, 3]
    du = u1 - u0
    flat = np.abs(c) * (np.abs(u0) + np.abs(u1)) <= 1e-14 * np.abs(d)
    with np.errstate(divide="ignore", invalid="ignore"):
        poly = (0.5 * a * (u1 + u0) * du + b * du) / d
        den0 = c * u0 + d
        frac = a / c * du + (b * c - a * d) / (c * c) * np.log1p(c * du / den0)
    return np.where(flat, poly, frac)


def crossings(F: np.ndarray, u0: float, u1: float) -> np.ndarray:
    """Points in ``(u0, u1)`` where two rows of ``F`` take equal values."""
    if len(F) < 2:
        return np.empty(0)
    i, j = np.triu_indices(len(F), 1)
    a1, b1, c1, d1 = F[i].T
    a2, b2, c2, d2 = F[j].T
    A = a1 * c2 - a2 * c1
    B = a1 * d2 + b1 * c2 - a2 * d1 - b2 * c1
    C = b1 * d2 - b2 * d1
    scale = np.abs(a1 * c2) + np.abs(a2 * c1) + np.abs(B) + np.abs(C) + 1e-300
    roots = []
    quad = np.abs(A) > 1e-13 * scale
    lin = ~quad & (np.abs(B) > 1e-13 * scale)
    roots.append(-C[lin] / B[lin])
    A, B, C = A[quad], B[quad], C[quad]
    disc = B * B - 4 * A * C
    ok = disc >= 0
    A, B, C, sq = A[ok], B[ok], C[ok], np.sqrt(disc[ok])
    qv = -0.5 * (B + np.copysign(sq, B))
    roots.append(qv / A)
    nz = qv != 0
    roots.append(C[nz] / qv[nz])
    r = np.concatenate(roots)
    return r[(r > u0) & (r < u1)]


def band_area(lowers, uppers, u0: float, u1: float) -> float:
    """Area of ``{u0 <= u <= u1, max(lowers) <= v <= min(uppers)}``.

    Bounds must stay finite on ``[u0, u1]``.
    """
    if not u1 > u0:
        return 0.0
    lowers = np.asarray(lowers, dtype=float).reshape(-1, 4)
    uppers = np.asarray(uppers, dtype=float).reshape(-1, 4)
    cuts = np.unique(np.concatenate(([u0, u1], crossings(np.vstack([lowers, uppers]), u0, u1))))
    lo, hi = cuts[:-1], cuts[1:]
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    mid = 0.5 * (lo + hi)
    up = lf_eval(uppers, mid)
    dn = lf_eval(lowers, mid)
    iu = np.argmin(up, axis=0)
    il = np.argmax(dn, axis=0)
    cols = np.arange(mid.size)
    pos = up[iu, cols] > dn[il, cols]
    if not pos.any():
        return 0.0
    lo, hi = lo[pos], hi[pos]
    area = lf_integral(uppers[iu[pos]], lo, hi) - lf_integral(lowers[il[pos]], lo, hi)
    return float(np.sum(area))


# ---------------------------------------------------------------------------
# one saturated step: a consecutive saturated pair inside F_Q


def area_omega1(w: float, eta: float) -> float:
    """Area of ``max(1-w, 1/(eta w)) <= u <= w, max(3w-1-u, 0) <= v <= w``.

    For ``u <= w`` the cap ``v <= w`` never binds below ``3w - 1 - u`` from
    above, so the height is ``max(0, 1 + u - 2w)`` and the area is
    ``((1-w)^2 - max(0, 1 + L - 2w)^2) / 2`` with ``L`` the left end.
    """
    if not 0.5 < w <= 1:
        raise ValueError(f"w={w} outside (1/2, 1]")
    if eta <= 1:
        return 0.0
    left = max(1 - w, 1 / (eta * w))
    if left >= w:
        return 0.0
    start = max(0.0, 1 + left - 2 * w)
    return 0.5 * ((1 - w) ** 2 - start**2)


def w0(eta: float) -> float:
    return (1 + math.sqrt(1 + 8 / eta)) / 4


# ---------------------------------------------------------------------------
# two Farey steps


def _hyperbola_window(w: float, eta: float) -> tuple[float, float] | None:
    """The u-interval where ``u (w - u) >= 1/eta``."""
    disc = w * w - 4 / eta
    if disc < 0:
        return None
    s = math.sqrt(disc)
    return 0.5 * (w - s), 0.5 * (w + s)


def omega2_bounds(branch: int, n: int, w: float, eta: float):
    """``(u_lo, u_hi, lowers, uppers)`` for one two-step family, or None if empty.

    Branch 1 is indexed by ``k >= 3`` (``floor(w/u) = k - 1``), branch 2 by
    ``l >= 2`` (``floor(w/u) = 1``, ``floor(w/(w-u)) = l``).  Both carry the
    constraint ``u <= 2w - 1``, which is the condition that the middle
    Farey step has ``nu = 1``.
    """
    win = _hyperbola_window(w, eta)
    if win is None:
        return None
    if branch == 1:
        if n < 3:
            raise ValueError("branch 1 needs k >= 3")
        lo, hi = max(1 - w, w / n), min(w / (n - 1), 2 * w - 1)
        uppers = [lf(0, w), lf(0, w * (1 - w), -1, w), lf(-w * (n + 1), w * (1 + w), 1, 0)]
    elif branch == 2:
        if n < 2:
            raise ValueError("branch 2 needs l >= 2")
        lo, hi = max(1 - w, (n - 1) * w / n), min(n * w / (n + 1), 2 * w - 1)
        uppers = [
            lf(0, w),
            lf(-3 * w, w * (1 + w), 1, 0),
            lf(-(n - 1) * w, w * (1 + (n - 2) * w), -1, w),
        ]
    else:
        raise ValueError(f"branch must be 1 or 2, got {branch}")
    lo, hi = max(lo, win[0]), min(hi, win[1])
    if not hi > lo:
        return None
    return lo, hi, [lf(0, 0)], uppers


def area_omega2(branch: int, n: int, w: float, eta: float) -> float:
    b = omega2_bounds(branch, n, w, eta)
    if b is None:
        return 0.0
    lo, hi, lowers, uppers = b
    return band_area(lowers, uppers, lo, hi)


# ---------------------------------------------------------------------------
# r Farey steps, described through the orbit of (u, w) under T


class _Piece:
    """Orbit data valid on one stretch of u where no floor changes.

    ``s[i] u + t[i]`` is the i-th orbit coordinate ``L_i`` (``L_0 = u``,
    ``L_1 = w``).  ``events`` are candidate u-values where the stretch ends.
    """

    __slots__ = ("s", "t", "phi_floor", "psi_floor", "excluded", "events")

    def __init__(self):
        self.s: list[float] = []
        self.t: list[float] = []
        self.phi_floor: list[int] = []
        self.psi_floor = 0
        self.excluded = False
        self.events: list[float] = []


def _floor_events(piece, p, alpha, beta, gamma, delta, n):
    # g(u) = (alpha u + beta)/(gamma u + delta) currently in [n, n+1)
    for k in (n, n + 1):
        den = alpha - k * gamma
        if den != 0:
            x = (k * delta - beta) / den
            if x > p:
                piece.events.append(x)


def _analyse(x: float, p: float, hi: float, w: float, r: int, eta: float) -> _Piece:
    piece = _Piece()
    s, t = [1.0, 0.0], [0.0, w]
    floor_lim = 1.0 / eta

    def value(i):
        return s[i] * p + t[i]

    def add_level(i):
        # L_i(u) = 1/eta ends the stretch (below it the point is excluded)
        if s[i] != 0:
            x = (floor_lim - t[i]) / s[i]
            if x > p:
                piece.events.append(x)

    for i in (0, 1):
        add_level(i)
    for i in range(1, r):
        lprev, lcur = value(i - 1), value(i)
        k = math.floor((1 + lprev) / lcur)
        _floor_events(piece, p, s[i - 1], 1 + t[i - 1], s[i], t[i], k)
        s.append(k * s[i] - s[i - 1])
        t.append(k * t[i] - t[i - 1])
        add_level(i + 1)
        if value(i + 1) < floor_lim:
            piece.excluded = True
            break
        # every later term 1/(L_{j-1} L_j) is at least 1 since L_j <= 1
        y = min([e for e in piece.events if e > p] + [hi])
        if _convex_min(*_gap_sum(s, t, i + 1), x, y) + (r - i - 1) > eta:
            piece.excluded = True
            break
    piece.s, piece.t = s, t
    if piece.excluded:
        return piece
    for i in range(r):
        n = math.floor(value(i + 1) / value(i))
        piece.phi_floor.append(n)
        _floor_events(piece, p, s[i + 1], t[i + 1], s[i], t[i], n)
    m = math.floor(value(r - 1) / value(r))
    piece.psi_floor = m
    _floor_events(piece, p, s[r - 1], t[r - 1], s[r], t[r], m)
    return piece


def _phi_lf(piece: _Piece, i: int, w: float):
    # w * ((1 + L_{i+1}) - (2 + n) L_i) / L_i
    s, t, n = piece.s, piece.t, piece.phi_floor[i]
    return lf(w * (s[i + 1] - (2 + n) * s[i]), w * (1 + t[i + 1] - (2 + n) * t[i]), s[i], t[i])


def _psi_lf(piece: _Piece, r: int, w: float):
    # w * (1 - L_{r-1} + (m - 1) L_r) / L_r
    s, t, m = piece.s, piece.t, piece.psi_floor
    return lf(w * (-s[r - 1] + (m - 1) * s[r]), w * (1 - t[r - 1] + (m - 1) * t[r]), s[r], t[r])


def _gap_sum(s, t, r: int):
    """The gap sum ``sum_{i<=r} 1/(L_{i-1} L_i)`` and its u-derivative."""
    s, t = s[: r + 1], t[: r + 1]
    pairs = list(zip(s, t, s[1:], t[1:]))

    def total(u):
        return sum(1.0 / ((s0 * u + t0) * (s1 * u + t1)) for s0, t0, s1, t1 in pairs)

    def slope(u):
        acc = 0.0
        for s0, t0, s1, t1 in pairs:
            l0, l1 = s0 * u + t0, s1 * u + t1
            acc -= (s0 * l1 + s1 * l0) / (l0 * l1) ** 2
        return acc

    return total, slope


def _convex_min(g, dg, x, y) -> float:
    """Minimum of a convex ``g`` on ``[x, y]``."""
    if dg(x) >= 0:
        return g(x)
    if dg(y) <= 0:
        return g(y)
    return g(brentq(dg, x, y, xtol=1e-15))


def _feasible_window(piece, r, eta, x, y):
    """Sub-interval of ``[x, y]`` where the gap sum is at most eta.

    Each term ``1/(L_{i-1} L_i)`` is log-convex in u, so the sum is convex and
    the feasible set is an interval.
    """
    g, dg = _gap_sum(piece.s, piece.t, r)
    gx, gy = g(x), g(y)
    if gx <= eta and gy <= eta:
        return x, y
    f = lambda u: g(u) - eta  # noqa: E731
    if gx <= eta:
        return x, brentq(f, x, y, xtol=1e-15)
    if gy <= eta:
        return brentq(f, x, y, xtol=1e-15), y
    dx, dy = dg(x), dg(y)
    if dx >= 0 or dy <= 0:
        return None
    um = brentq(dg, x, y, xtol=1e-15)
    if g(um) > eta:
        return None
    return brentq(f, x, um, xtol=1e-15), brentq(f, um, y, xtol=1e-15)


def _piece_area(piece: _Piece, r: int, w: float, eta: float, x: float, y: float) -> float:
    win = _feasible_window(piece, r, eta, x, y)
    if win is None:
        return 0.0
    lowers = [lf(0, 0)] + [_phi_lf(piece, i, w) for i in range(1, r)]
    uppers = [lf(0, w), _phi_lf(piece, 0, w), _psi_lf(piece, r, w)]
    return band_area(lowers, uppers, *win)


def orbit_pieces(r: int, w: float, eta: float):
    """Yield ``(x, y, piece)`` covering the u-range ``[max(1-w, 1/eta), w]``."""
    lo, hi = max(1 - w, 1 / eta), w
    x = lo
    while x < hi:
        step = 1e-12 * max(1.0, abs(x))
        p = x + step
        if p >= hi:
            break
        piece = _analyse(x, p, hi, w, r, eta)
        y = min([e for e in piece.events if e > p] + [hi])
        yield x, y, piece
        x = y


def area_omega3(r: int, w: float, eta: float) -> float:
    """Area of the r-step region for fixed ``w``.

    ``u`` ranges over ``[1-w, w]`` with the gap sum along the first ``r``
    orbit points at most ``eta``; ``v`` lies between
    ``max(0, w Phi(T^i(u, w)))`` for ``1 <= i < r`` and
    ``min(w, w Phi(u, w), w Psi(T^{r-1}(u, w)))``.  Valid for ``r >= 2``.
    """
    if r < 2:
        raise ValueError("orbit regions need r >= 2")
    if not 0.5 < w <= 1:
        raise ValueError(f"w={w} outside (1/2, 1]")
    if eta <= r or w * w < 1 / eta:
        return 0.0
    total = 0.0
    for x, y, piece in orbit_pieces(r, w, eta):
        if not piece.excluded:
            total += _piece_area(piece, r, w, eta, x, y)
    return total
