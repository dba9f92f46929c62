"""Adaptive composite Simpson quadrature with user-supplied breakpoints."""

from __future__ import annotations

from typing import Callable, Iterable


def _refine(f, a, fa, b, fb, fm, whole, tol, depth):
    m = 0.5 * (a + b)
    flm, frm = f(0.5 * (a + m)), f(0.5 * (m + b))
    h = (b - a) / 12.0
    left = h * (fa + 4.0 * flm + fm)
    right = h * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0, abs(delta) / 15.0
    lv, le = _refine(f, a, fa, m, fm, flm, left, tol / 2, depth - 1)
    rv, re = _refine(f, m, fm, b, fb, frm, right, tol / 2, depth - 1)
    return lv + rv, le + re


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-8,
    breakpoints: Iterable[float] = (),
    max_depth: int = 40,
    min_panels: int = 4,
) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]``; returns ``(value, error_estimate)``.

    The interval is cut at every breakpoint inside ``(a, b)`` and each piece
    is split into ``min_panels`` equal panels before adaptive refinement, so
    narrow features are not skipped by the first coarse estimate.  The
    tolerance is shared between panels in proportion to their width.
    """
    if b < a:
        v, e = adaptive_simpson(f, b, a, tol, breakpoints, max_depth, min_panels)
        return -v, e
    if b == a:
        return 0.0, 0.0
    cuts = sorted({a, b, *(p for p in breakpoints if a < p < b)})
    edges = []
    for lo, hi in zip(cuts, cuts[1:]):
        step = (hi - lo) / min_panels
        edges.extend(lo + i * step for i in range(min_panels))
    edges.append(b)
    fvals = [f(x) for x in edges]
    total, err = 0.0, 0.0
    for i in range(len(edges) - 1):
        lo, hi = edges[i], edges[i + 1]
        if hi <= lo:
            continue
        m = 0.5 * (lo + hi)
        fm = f(m)
        whole = (hi - lo) / 6.0 * (fvals[i] + 4.0 * fm + fvals[i + 1])
        v, e = _refine(
            f, lo, fvals[i], hi, fvals[i + 1], fm, whole, tol * (hi - lo) / (b - a), max_depth
        )
        total += v
        err += e
    return total, err
