"""
Rota-Baxter Operators
Homotopy relative Rota-Baxter operators T = T_1 + T_2 + ... and their verification
"""

import logging
from fractions import Fraction
from typing import Dict, Optional, Sequence

import numpy as np

from graded.errors import AlgebraError, PreconditionError, SpaceMismatchError
from graded.space import Element
from graded.verdict import verdict
from brackets.derivation import DerivationRep, derivation_bracket
from linfty.maurer_cartan import mc_residual
from derived.gauge import ad_exponential
from derived.higher_brackets import DerivedStructure, derived_brackets_small
from derived.vstructure import DerivationDgla
from rota_baxter.hlr import HlrAlgebra, HLRPair

logger = logging.getLogger(__name__)


class RBOperator:
    """
    Components T_k: S^k(V[1]) -> g[1] of degree 0, stored as the terms
    (v_1 * ... * v_k -> x) of a derivation of S(W*), W = (g + V)[1]
    """

    def __init__(self, algebra: HlrAlgebra, rep: Optional[DerivationRep] = None, name: str = 'T'):
        self.algebra = algebra
        self.name = name
        rep = rep if rep is not None else algebra.zero()
        if rep.space != algebra.space:
            raise SpaceMismatchError(f"Operator acts on {rep.space.name}, expected {algebra.space.name}")
        for monomial, output, _ in rep.terms():
            if not algebra.in_rb_block(monomial, output):
                raise AlgebraError(f"Term {algebra.term_text(monomial, output)} is not of the form S(V[1]) -> g[1]")
            degree = rep.term_degree(monomial, output)
            if degree != 0:
                raise AlgebraError(f"Term {algebra.term_text(monomial, output)} has degree {degree}, expected 0")
        self.rep = rep

    @classmethod
    def from_matrix(cls, algebra: HlrAlgebra, matrix, name: str = 'T') -> 'RBOperator':
        """Arity-one operator from a dim g x dim V matrix: T(v_j) = sum_i T[i][j] x_i"""
        terms = []
        for i in range(algebra.g.dim):
            for j in range(algebra.V.dim):
                c = Fraction(matrix[i][j])
                if c:
                    terms.append(((algebra.offset + j,), i, c))
        return cls(algebra, DerivationRep.from_terms(algebra.space, terms, algebra.cap), name)

    @classmethod
    def from_components(cls, algebra: HlrAlgebra, components: Dict[Sequence[int], Element],
                        name: str = 'T') -> 'RBOperator':
        """Components keyed by words of V basis indices, valued in g"""
        terms = []
        for word, value in components.items():
            if value.space != algebra.g:
                raise SpaceMismatchError(f"Operator values lie in {value.space.name}, expected {algebra.g.name}")
            for i, c in value.terms.items():
                terms.append((tuple(algebra.offset + j for j in word), i, c))
        return cls(algebra, DerivationRep.from_terms(algebra.space, terms, algebra.cap), name)

    def matrix(self) -> np.ndarray:
        """The arity-one component as a dim g x dim V matrix"""
        algebra = self.algebra
        result = np.array([[Fraction(0)] * algebra.V.dim for _ in range(algebra.g.dim)], dtype=object)
        for monomial, output, c in self.rep.terms():
            if len(monomial) == 1:
                result[output, monomial[0] - algebra.offset] = c
        return result

    def arities(self):
        return self.rep.arities()

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __add__(self, other: 'RBOperator') -> 'RBOperator':
        return RBOperator(self.algebra, self.rep + other.rep, self.name)

    def __mul__(self, scalar) -> 'RBOperator':
        return RBOperator(self.algebra, self.rep * scalar, self.name)

    def to_text(self) -> str:
        return self.rep.to_text()

    def __repr__(self) -> str:
        return f"RBOperator({self.name}, arities {self.arities()})"


def rb_vstructure(pair: HLRPair) -> DerivationDgla:
    """
    Derivations of S(W*) with d = [Phi, -] and P the projection onto
    Hom(S(V[1]), g[1]); the weight is the V-arity (plus one for outputs in g)

    Raises:
        PreconditionError: Phi is not MC
    """
    algebra = pair.algebra
    phi = pair.element
    square = derivation_bracket(phi, phi, algebra.cap)
    if not square.is_zero():
        raise PreconditionError(f"{pair.name} is not MC in L_HLR: [Phi, Phi] = {square.to_text()}",
                                report={'residual': square.to_text()})
    return DerivationDgla(algebra.space, phi, algebra.in_rb_block, algebra.rb_weight, cap=algebra.cap,
                          weight_cap=algebra.cap + 1, name=f"Der({algebra.space.name})")


def check_rb_operator(pair: HLRPair, operator: RBOperator, vs: Optional[DerivationDgla] = None,
                      small: Optional[DerivedStructure] = None) -> Dict:
    """
    P(e^(ad_T) Phi) = 0, reported per arity

    T is also tested as an MC element of the derived brackets on h[-1]; the two
    verdicts come from independent computations and must agree.
    """
    vs = vs if vs is not None else rb_vstructure(pair)
    value, steps = ad_exponential(vs, operator.rep, pair.element)
    residual = vs.project(value)
    algebra = pair.algebra
    residuals = []
    for monomial, entry in sorted(residual.entries.items(), key=lambda kv: (len(kv[0]), kv[0])):
        residuals.append({
            'relation': f"arity {len(monomial)}",
            'monomial': '*'.join(algebra.space.symbols[i] for i in monomial),
            'residual': entry.to_text(),
        })
    small = small if small is not None else derived_brackets_small(vs, cap=algebra.cap)
    small_mc = mc_residual(small, small.h_element(operator.rep)).is_zero()
    is_rb = residual.is_zero()
    if small_mc != is_rb:
        residuals.append({'relation': 'equivalence',
                          'residual': f"derived-bracket MC {small_mc}, projected exponential {is_rb}"})
    logger.info(f"RB check of {operator.name} on {pair.name}: {'pass' if is_rb else 'fail'} "
                f"after {steps} adjoint steps")
    return verdict('rb_operator', residuals, [f"arity {k}" for k in range(1, algebra.cap + 1)],
                   caps={'max_arity': algebra.cap, 'max_weight': vs.weight_cap},
                   series_length=steps, small_mc=small_mc, operator=operator.name)
