"""
V-structures, higher derived brackets and the gauge action
"""

from .vstructure import (VStructureDgla, StructureConstantDgla, DerivationDgla, check_vstructure,
                         random_vstructure)
from .higher_brackets import (DerivedStructure, derived_brackets_small, derived_brackets_big,
                              big_mc_residual, check_extension)
from .gauge import ad_exponential, gauge, vmc_check, map_i, map_j, mc_residual_dgla

__all__ = [
    'VStructureDgla', 'StructureConstantDgla', 'DerivationDgla', 'check_vstructure', 'random_vstructure',
    'DerivedStructure', 'derived_brackets_small', 'derived_brackets_big', 'big_mc_residual',
    'check_extension',
    'ad_exponential', 'gauge', 'vmc_check', 'map_i', 'map_j', 'mc_residual_dgla',
]
