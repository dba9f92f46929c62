"""The map ``T(x, y) = (y, kappa(x, y) y - x)`` on the triangle
``0 < x, y <= 1, x + y > 1``, and the functions evaluated along its orbits.

Everything here accepts floats or exact :class:`fractions.Fraction` values;
with Fractions the domain checks are exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

TOL = 1e-12


def _tol(*xs) -> float:
    return 0 if all(isinstance(x, (int, Fraction)) for x in xs) else TOL


def in_triangle(x, y, tol: float | None = None) -> bool:
    if tol is None:
        tol = _tol(x, y)
    return x > 0 and y > 0 and x <= 1 + tol and y <= 1 + tol and x + y > 1 - tol


def kappa(x, y) -> int:
    """``floor((1 + x) / y)``; at least 1 on the triangle."""
    if not in_triangle(x, y):
        raise ValueError(f"({x}, {y}) is not in the triangle")
    return math.floor((1 + x) / y)


def t_map(s):
    x, y = s
    k = kappa(x, y)
    nxt = (y, k * y - x)
    if not in_triangle(*nxt):
        raise ArithmeticError(f"T({x}, {y}) = {nxt} left the triangle")
    return nxt


def t_orbit(s, n: int) -> list:
    """``[s, T(s), ..., T^n(s)]``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = [tuple(s)]
    for _ in range(n):
        out.append(t_map(out[-1]))
    return out


def _positive(x, y) -> None:
    if x == 0 or y == 0:
        raise ZeroDivisionError("x and y must be nonzero")


def phi_fn(x, y):
    """``(1 + y)/x - 2 - floor(y/x)``."""
    _positive(x, y)
    return (1 + y) / x - 2 - math.floor(y / x)


def psi_fn(x, y):
    """``(1 - x)/y - 1 + floor(x/y)``."""
    _positive(x, y)
    return (1 - x) / y - 1 + math.floor(x / y)


def rho_fn(x, y):
    """``1/(x y)``, the normalised length of a Farey gap."""
    _positive(x, y)
    return 1 / (x * y)
