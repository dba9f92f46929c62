"""Gap statistics: the T-map, run enumeration, region areas and the C_r constants."""

from .constants import C1_PLATEAU, c1, c2, c2_terms, c_any, c_r, gap_cdf_theory
from .dynamics import in_triangle, kappa, phi_fn, psi_fn, rho_fn, t_map, t_orbit
from .empirical import FareyFamily, GapTable, RunTable, empirical_gap_cdf, enumerate_H, gap_table, h_table
from .quadrature import adaptive_simpson
from .regions import area_omega1, area_omega2, area_omega3, omega2_bounds, w0

__all__ = [
    "C1_PLATEAU", "FareyFamily", "GapTable", "RunTable", "adaptive_simpson",
    "area_omega1", "area_omega2", "area_omega3", "c1", "c2", "c2_terms", "c_any", "c_r",
    "empirical_gap_cdf", "enumerate_H", "gap_cdf_theory", "gap_table", "h_table",
    "in_triangle", "kappa", "omega2_bounds", "phi_fn", "psi_fn", "rho_fn", "t_map",
    "t_orbit", "w0",
]
