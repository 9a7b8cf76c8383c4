"""
Hamiltonian Vector Fields
The map H from the shifted Poisson algebra to derivations of S(U), U = (g + g*[n-2])[1]
"""

import logging
from typing import Dict, Optional, Tuple

from graded.errors import AlgebraError
from graded.signs import Monomial
from graded.space import GradedSpace, dual_space
from graded.verdict import verdict
from brackets.derivation import DerivationRep
from linfty.structure import residual_entries
from poisson.algebra import PoissonAlgebra, PoissonPoly, right_derivative, double, poisson_bracket
from rota_baxter.hlr import HlrAlgebra

logger = logging.getLogger(__name__)


def hlr_algebra(algebra: PoissonAlgebra, cap: Optional[int] = None) -> HlrAlgebra:
    """L_HLR(g, g*[n-2]); its basis u_j is dual to the generator z_j of the Poisson algebra"""
    cap = cap if cap is not None else algebra.weight_cap - 1
    return HlrAlgebra(algebra.g, dual_space(algebra.g, algebra.n - 2), cap)


def _evaluation_factor(space: GradedSpace, monomial: Monomial) -> int:
    """[f <- d/dz_a1 ... <- d/dz_ak] at zero for f the monomial z_a1 ... z_ak itself"""
    factor = 1
    current = monomial
    for i in monomial:
        sign, current = right_derivative(space, current, i)
        factor *= sign
    return factor


def hamiltonian(p: PoissonPoly, hlr: Optional[HlrAlgebra] = None, cap: Optional[int] = None) -> DerivationRep:
    """
    H(p): the derivation {p, -} as a multibracket family on U

    For p of Lie degree e, the component with output u_j is
    f_j = -(-1)^(n e + e w_j) {p, z_j}, and the value on u_a1 ... u_ak is the
    coefficient read off f_j by successive right derivatives.

    Raises:
        AlgebraError: p has a linear term, which would give an arity-0 component
    """
    algebra = p.algebra
    hlr = hlr if hlr is not None else hlr_algebra(algebra, cap)
    space = algebra.space
    n = algebra.n
    terms = []
    for degree, part in p.homogeneous_parts().items():
        for j in range(space.dim):
            w = algebra.shifted_degrees[j % algebra.dim]
            sign = 1 if (n * degree + degree * w) % 2 else -1
            field = poisson_bracket(part, algebra.generator(j), weight_cap=part.max_weight())
            for monomial, c in field.terms.items():
                if not monomial:
                    raise AlgebraError(f"H needs a polynomial without linear terms: {p.to_text()}")
                terms.append((monomial, j, sign * c * _evaluation_factor(space, monomial)))
    return DerivationRep.from_terms(hlr.space, terms, hlr.cap)


def hamiltonian_of_derivation(derivation: DerivationRep, algebra: PoissonAlgebra,
                              hlr: Optional[HlrAlgebra] = None) -> Tuple[DerivationRep, Dict]:
    """
    H(D_n(Q)) with the check that its part on g is Q again; the rest is the
    coadjoint part acting on g*[n-2]
    """
    hlr = hlr if hlr is not None else hlr_algebra(algebra)
    element = hamiltonian(double(derivation, algebra), hlr)
    der, _, _ = hlr.split(element)
    residual = der - derivation.truncated(hlr.cap)
    result = verdict('hamiltonian_composite', residual_entries(residual), ['derivation_part'],
                     caps={'max_arity': hlr.cap, 'max_weight': algebra.weight_cap})
    return element, result
