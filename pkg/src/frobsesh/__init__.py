"""Exact Seshadri and Frobenius-Seshadri constants on smooth projective toric varieties."""

from .lattice import det, invert_unimodular, solve_exact
from .seshadri import classical_seshadri, frobenius_seshadri, frobenius_jet_number, report_at
from .toric import Fan, ToricDivisor, chart_at, is_ample, polytope_of, validate_fan

__all__ = [
    "Fan",
    "ToricDivisor",
    "chart_at",
    "classical_seshadri",
    "det",
    "frobenius_jet_number",
    "frobenius_seshadri",
    "invert_unimodular",
    "is_ample",
    "polytope_of",
    "report_at",
    "solve_exact",
    "validate_fan",
]
