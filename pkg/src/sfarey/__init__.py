"""Saturated Farey sets: generation, the matrix monoid behind them, counting
statistics and the limiting gap distribution."""

from .distribution import A, ZETA2, convergence_report, count_saturated_below, limit_cdf
from .farey import farey_walk, h_value, is_saturated, mod_inverse, next_farey, to_rational
from .monoid import MonoidMatrix, cf_factorize, count_S_Q_below, enumerate_S_Q, psi, psi_image
from .saturated import (
    SaturatedFamily,
    SaturatedSequence,
    generate_by_filter,
    generate_by_insertion,
    insertion_sweep,
    insertion_tree,
    verify_unimodular,
)

__version__ = "0.1.0"

__all__ = [
    "A", "ZETA2", "MonoidMatrix", "SaturatedFamily", "SaturatedSequence", "cf_factorize",
    "convergence_report", "count_S_Q_below", "count_saturated_below", "enumerate_S_Q",
    "farey_walk", "generate_by_filter", "generate_by_insertion", "h_value", "insertion_sweep",
    "insertion_tree", "is_saturated", "limit_cdf", "mod_inverse", "next_farey", "psi",
    "psi_image", "to_rational",
    "verify_unimodular",
]
