"""The density constants ``C_r(eta)`` with ``#H_{Q,r}(eta) ~ C_r(eta) Q^2`` and the
limiting gap distribution assembled from them.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from ..distribution import A, ZETA2
from .quadrature import adaptive_simpson
from .regions import area_omega1, area_omega2, area_omega3, w0

C1_PLATEAU = (2 * math.log(3) - 3.5 * math.log(2) + 0.25) / ZETA2

TOL_CLOSED = 1e-9
TOL_ORBIT = 1e-7


def c1_breakpoints(eta: float) -> list[float]:
    pts = [2 / 3]
    if eta > 1:
        pts.append(1 / math.sqrt(eta))
        pts.append(w0(eta))
    if eta >= 4:
        s = math.sqrt(1 - 4 / eta)
        pts += [(1 - s) / 2, (1 + s) / 2]
    return [p for p in pts if 0.5 < p < 1]


def c1(eta: float, method: str = "auto", tol: float = TOL_CLOSED) -> float:
    """``C_1(eta) = (1/zeta(2)) * int_{1/2}^1 Area Omega_1(w, eta) dw / w``.

    ``method="auto"`` returns the closed-form plateau for ``eta >= 9/2`` and
    integrates otherwise; ``method="quad"`` always integrates.
    """
    if eta <= 1:
        return 0.0
    if method == "auto" and eta >= 4.5:
        return C1_PLATEAU
    if method not in ("auto", "quad"):
        raise ValueError(f"unknown method {method!r}")
    val, _ = adaptive_simpson(
        lambda w: area_omega1(w, eta) / w if w > 0.5 else 0.0,
        0.5, 1.0, tol=tol, breakpoints=c1_breakpoints(eta),
    )
    return val / ZETA2


def _omega2_window_ends(branch: int, n: int, eta: float):
    """Candidate u-window ends of one two-step family, as functions of ``w``."""

    def root(sign):
        return lambda w: 0.5 * (w + sign * math.sqrt(max(w * w - 4 / eta, 0.0)))

    if branch == 1:
        ends = [lambda w: 1 - w, lambda w: w / n, lambda w: w / (n - 1)]
    else:
        ends = [lambda w: 1 - w, lambda w: (n - 1) * w / n, lambda w: n * w / (n + 1)]
    return ends + [lambda w: 2 * w - 1, root(-1), root(1)]


def _omega2_breakpoints(branch: int, n: int, eta: float, w_lo: float) -> list[float]:
    """Values of ``w`` where the area integrand may have a kink.

    Those are the points where two candidate window ends cross; they are
    bracketed on a grid and refined with brentq.
    """
    pts = [2 / 3, math.sqrt(4 / eta)]
    ends = _omega2_window_ends(branch, n, eta)
    grid = np.linspace(max(w_lo, math.sqrt(4 / eta)), 1.0, 257)
    for i in range(len(ends)):
        for j in range(i + 1, len(ends)):
            f = lambda w, a=ends[i], b=ends[j]: a(w) - b(w)
            vals = [f(w) for w in grid]
            for k in range(len(grid) - 1):
                if vals[k] == 0:
                    pts.append(grid[k])
                elif vals[k] * vals[k + 1] < 0:
                    pts.append(brentq(f, grid[k], grid[k + 1], xtol=1e-15))
    return sorted({p for p in pts if w_lo < p < 1})


def c2_terms(eta: float, tol: float = TOL_ORBIT) -> list[tuple[int, int, float]]:
    """``(branch, k or l, contribution)`` for each family, already divided by zeta(2)."""
    out = []
    k = 3
    while k < 1 + eta:
        lo = 1 - 1 / k
        val, _ = adaptive_simpson(
            lambda w: area_omega2(1, k, w, eta) / w, lo, 1.0, tol=tol,
            breakpoints=_omega2_breakpoints(1, k, eta, lo),
        )
        out.append((1, k, val / ZETA2))
        k += 1
    ell = 2
    while ell < eta:
        lo = (ell + 1) / (2 * ell + 1)
        val, _ = adaptive_simpson(
            lambda w: area_omega2(2, ell, w, eta) / w, lo, 1.0, tol=tol,
            breakpoints=_omega2_breakpoints(2, ell, eta, lo),
        )
        out.append((2, ell, val / ZETA2))
        ell += 1
    return out


def c2(eta: float, tol: float = TOL_ORBIT) -> float:
    if eta <= 2:
        return 0.0
    return sum(v for _, _, v in c2_terms(eta, tol))


def c_r(r: int, eta: float, tol: float = TOL_ORBIT) -> float:
    """``(1/zeta(2)) * int_{1/2}^1 Area Omega_{3,r}(w, eta) dw / w``.

    Meant for ``r >= 3``; ``r = 2`` describes the same set as :func:`c2` and
    is accepted for cross-checking.
    """
    if r < 2:
        raise ValueError("c_r needs r >= 2; use c1 for r = 1")
    if eta <= r:
        return 0.0
    lo = max(0.5, 1 / math.sqrt(eta))
    val, _ = adaptive_simpson(
        lambda w: area_omega3(r, w, eta) / w if w > 0.5 else 0.0,
        lo, 1.0, tol=tol, breakpoints=[2 / 3, 3 / 4],
    )
    return val / ZETA2


@lru_cache(maxsize=4096)
def c_any(r: int, eta: float, tol: float = TOL_ORBIT) -> float:
    if r == 1:
        return c1(eta)
    if r == 2:
        return c2(eta, tol)
    return c_r(r, eta, tol)


def gap_cdf_theory(lam: float, tol: float = TOL_ORBIT, r_max: int | None = None) -> float:
    """``G(lam) = (1/A) * sum_{1 <= r < lam/A} C_r(lam/A)``; zero on ``[0, A]``.

    ``r_max`` truncates the r-sum (the omitted terms are nonnegative).
    """
    if lam <= A:
        return 0.0
    eta = lam / A
    top = math.ceil(eta) - 1
    if r_max is not None:
        top = min(top, r_max)
    return sum(c_any(r, eta, tol) for r in range(1, top + 1)) / A
