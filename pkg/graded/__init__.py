"""
Graded core: spaces, shifts, exact scalars and Koszul signs
"""

from .space import GradedSpace, Element, direct_sum, dual_space, shift_space, shift_element, to_fraction
from .signs import koszul_sign, normalize_monomial, unshuffles, multi_unshuffles, basis_monomials

__all__ = [
    'GradedSpace', 'Element', 'direct_sum', 'dual_space', 'shift_space', 'shift_element',
    'to_fraction', 'koszul_sign', 'normalize_monomial', 'unshuffles', 'multi_unshuffles',
    'basis_monomials',
]
