"""Hall algebra engine: quiver representations, Hall polynomials, PBW and canonical bases."""

from .algebra import (
    PBWVector,
    canonical_basis,
    decomposition_row,
    hall_product,
    monomial_to_pbw,
    rho_on_hall,
)
from .counting import HallPolynomial, hall_number, hall_polynomial, m_form
from .laurent import LaurentPoly
from .quiver import QuiverRep, build_rep, classify, dim_orbit, rank_invariants

__all__ = [
    "HallPolynomial",
    "LaurentPoly",
    "PBWVector",
    "QuiverRep",
    "build_rep",
    "canonical_basis",
    "classify",
    "decomposition_row",
    "dim_orbit",
    "hall_number",
    "hall_polynomial",
    "hall_product",
    "m_form",
    "monomial_to_pbw",
    "rank_invariants",
    "rho_on_hall",
]
