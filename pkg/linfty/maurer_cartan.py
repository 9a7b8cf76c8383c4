"""
Maurer-Cartan Elements
MC residuals and the pushforward of MC elements along L-infinity morphisms
"""

import itertools
import logging
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence

from graded.errors import AlgebraError, PreconditionError, SpaceMismatchError
from graded.signs import monomial_multiplicity
from graded.space import Element, GradedSpace
from linfty.cdga import ExtendedStructure, NilpotentCdga, extend_morphism, extend_scalars
from linfty.morphism import LInftyMorphism
from linfty.structure import LInftyStructure, require_certificate

logger = logging.getLogger(__name__)


def exponential_sum(value: Callable[[Sequence[int]], Element], xi: Element, max_arity: int,
                    target: GradedSpace) -> Element:
    """
    sum_{k=1}^{max_arity} (1/k!) f_k(xi, ..., xi) for xi of degree 0

    Every term of a degree-0 element is even, so f_k(xi^k)/k! is the sum over
    multisets of terms with weight (product of coefficients) / multiplicity.
    """
    if not xi.is_zero() and xi.degree != 0:
        raise AlgebraError(f"MC series need an element of degree 0, got degree {xi.degree}")
    terms = sorted(xi.terms.items())
    total: Dict[int, Fraction] = {}
    for k in range(1, max_arity + 1):
        for combo in itertools.combinations_with_replacement(terms, k):
            indices = tuple(i for i, _ in combo)
            result = value(indices)
            if result.is_zero():
                continue
            weight = Fraction(1, monomial_multiplicity(indices))
            for _, c in combo:
                weight *= c
            for i, c in result.terms.items():
                total[i] = total.get(i, 0) + weight * c
    return Element(target, total)


def mc_residual(structure: LInftyStructure, xi: Element, algebra: Optional[NilpotentCdga] = None,
                certificate=None) -> Element:
    """
    sum_i (1/i!) m_i(xi, ..., xi)

    Args:
        structure: the L-infinity algebra, or its extension over the coefficients
        xi: degree-0 element of the shifted (extended) space
        algebra: nilpotent coefficients; the structure is extended over it when needed
        certificate: (weights, level) weak filtration certificate when no coefficients are given

    Returns:
        The residual; xi is MC exactly when it vanishes
    """
    if algebra is not None and not isinstance(structure, ExtendedStructure):
        structure = extend_scalars(structure, algebra)
    if not isinstance(structure, ExtendedStructure):
        require_certificate(structure, certificate)
    if xi.space != structure.shifted:
        raise SpaceMismatchError(f"MC candidate lives in {xi.space.name}, expected {structure.shifted.name}")
    return exponential_sum(structure.value, xi, structure.cap, structure.shifted)


def is_mc(structure: LInftyStructure, xi: Element, algebra: Optional[NilpotentCdga] = None,
          certificate=None) -> bool:
    return mc_residual(structure, xi, algebra, certificate).is_zero()


def mc_pushforward(morphism: LInftyMorphism, xi: Element, algebra: Optional[NilpotentCdga] = None,
                   certificate=None) -> Element:
    """
    sum_k (1/k!) f_k(xi, ..., xi), the image of an MC element

    Raises:
        PreconditionError: xi is not MC in the source
    """
    if algebra is not None and not isinstance(morphism.source, ExtendedStructure):
        morphism = extend_morphism(morphism, algebra)
    residual = mc_residual(morphism.source, xi, certificate=certificate)
    if not residual.is_zero():
        raise PreconditionError(f"Source element is not MC: residual {residual.to_text()}",
                                report={'residual': residual.to_text()})
    image = exponential_sum(morphism.value, xi, morphism.cap, morphism.target.shifted)
    logger.debug(f"Pushed MC element along {morphism.name}: {image.to_text()}")
    return image
