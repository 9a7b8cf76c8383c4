"""
L-infinity algebras, morphisms, Maurer-Cartan elements and scalar extension
"""

from .dgla import BracketTable, Dgla, gl_structure, lie_algebra
from .structure import (LInftyStructure, check_linfty, check_filtered, check_weakly_filtered,
                        dgla_structure, abelian_structure)
from .morphism import (LInftyMorphism, check_morphism, representation_check, strict_morphism,
                       matrix_morphism, identity_morphism, adjoint_representation, zero_representation)
from .cdga import (NilpotentCdga, CdgaMorphism, check_cdga, extend_scalars, extend_morphism,
                   cdga_base_change, dual_numbers, truncated_polynomials, exterior_cdga)
from .maurer_cartan import mc_residual, mc_pushforward, is_mc

__all__ = [
    'BracketTable', 'Dgla', 'gl_structure', 'lie_algebra',
    'LInftyStructure', 'check_linfty', 'check_filtered', 'check_weakly_filtered', 'dgla_structure',
    'abelian_structure',
    'LInftyMorphism', 'check_morphism', 'representation_check', 'strict_morphism', 'matrix_morphism',
    'identity_morphism', 'adjoint_representation', 'zero_representation',
    'NilpotentCdga', 'CdgaMorphism', 'check_cdga', 'extend_scalars', 'extend_morphism', 'cdga_base_change',
    'dual_numbers', 'truncated_polynomials', 'exterior_cdga',
    'mc_residual', 'mc_pushforward', 'is_mc',
]
