"""
Lie-representation pairs, homotopy relative Rota-Baxter operators and their governing algebra
"""

from .hlr import HlrAlgebra, HLRPair, build_hlr, embed_hlr, classical_pair, adjoint_pair
from .operator import RBOperator, rb_vstructure, check_rb_operator
from .classical import (classical_rb_residual, is_classical_rb, solve_classical_rb_grid, twisted_classical,
                        pair_constants)
from .lhrb import build_lhrb, rb_triple_mc_check, lhrb_extension_check, lhrb_vstructure

__all__ = [
    'HlrAlgebra', 'HLRPair', 'build_hlr', 'embed_hlr', 'classical_pair', 'adjoint_pair',
    'RBOperator', 'rb_vstructure', 'check_rb_operator',
    'classical_rb_residual', 'is_classical_rb', 'solve_classical_rb_grid', 'twisted_classical', 'pair_constants',
    'build_lhrb', 'rb_triple_mc_check', 'lhrb_extension_check', 'lhrb_vstructure',
]
