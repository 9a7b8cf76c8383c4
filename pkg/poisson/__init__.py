"""
Shifted Poisson algebras, the double, higher Schouten algebras and r-infinity matrices
"""

from .algebra import PoissonAlgebra, PoissonPoly, poisson_bracket, double, undouble, poisson_algebra_for
from .schouten import (PoissonDgla, schouten_structure, schouten_vstructure, build_lhm, lhm_algebra,
                       elementary_doubles)
from .rmatrix import check_rmatrix, triangular_bialgebra, bialgebra_projections, lhm_mc_check, validate_rmatrix
from .oracles import classical_schouten, symmetric_poisson, contravariant_terms

__all__ = [
    'PoissonAlgebra', 'PoissonPoly', 'poisson_bracket', 'double', 'undouble', 'poisson_algebra_for',
    'PoissonDgla', 'schouten_structure', 'schouten_vstructure', 'build_lhm', 'lhm_algebra', 'elementary_doubles',
    'check_rmatrix', 'triangular_bialgebra', 'bialgebra_projections', 'lhm_mc_check', 'validate_rmatrix',
    'classical_schouten', 'symmetric_poisson', 'contravariant_terms',
]
