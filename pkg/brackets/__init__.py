"""
Multibrackets: graded symmetric multilinear maps and the derivation bracket
"""

from .multimap import MultiMap, expand_arguments
from .derivation import DerivationRep, compose, derivation_bracket, linear_derivation

__all__ = ['MultiMap', 'expand_arguments', 'DerivationRep', 'compose', 'derivation_bracket',
           'linear_derivation']
