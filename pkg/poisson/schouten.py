"""
Higher Schouten Algebras
The Poisson algebra as a V-structure, the derived brackets on its contravariant
part, and the algebra L_LHM whose MC elements are triangular bialgebras
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from config.config import Config
from graded.errors import AlgebraError, PreconditionError
from graded.signs import Monomial, basis_monomials
from graded.space import GradedSpace
from graded.verdict import passed
from brackets.derivation import DerivationRep
from linfty.structure import LInftyStructure, check_linfty
from derived.higher_brackets import DerivedStructure, derived_brackets_big, derived_brackets_small
from derived.vstructure import VStructureDgla
from poisson.algebra import PoissonAlgebra, PoissonPoly, double, poisson_algebra_for, poisson_bracket

logger = logging.getLogger(__name__)


class PoissonDgla(VStructureDgla):
    """
    L: polynomials whose terms have a v factor and either a xi factor or at least
    min_q v factors; d = {D, -}; P keeps the xi-free terms; h = im P

    The admissibility weight of a term is W - p: bracketing with h removes one xi.

    Args:
        algebra: the Poisson algebra
        differential_element: D, usually the double of an L-infinity structure (None for d = 0)
        min_q: 2 for the r-matrix setting, 1 to include the linear part of S(g[1-n])
        headroom: extra weight kept for intermediate brackets
    """

    def __init__(self, algebra: PoissonAlgebra, differential_element: Optional[PoissonPoly] = None,
                 min_q: int = 2, headroom: int = 0, name: Optional[str] = None):
        self.algebra = algebra
        self.D = differential_element if differential_element is not None else algebra.zero()
        self.min_q = min_q
        self.bracket_cap = algebra.weight_cap + headroom
        self.name = name or f"Poisson({algebra.g.name}, n={algebra.n})"
        self._l_basis: Optional[List[Tuple[str, PoissonPoly]]] = None
        self._l_index: Dict[Monomial, int] = {}
        self._h_basis: Optional[List[Tuple[str, PoissonPoly]]] = None
        self._h_index: Dict[Monomial, int] = {}

    @property
    def weight_cap(self) -> int:
        return self.algebra.weight_cap

    def zero(self) -> PoissonPoly:
        return self.algebra.zero()

    def bracket(self, a: PoissonPoly, b: PoissonPoly) -> PoissonPoly:
        return poisson_bracket(a, b, truncate=True, weight_cap=self.bracket_cap)

    def differential(self, a: PoissonPoly) -> PoissonPoly:
        if self.D.is_zero():
            return self.zero()
        return self.bracket(self.D, a)

    def project(self, a: PoissonPoly) -> PoissonPoly:
        algebra = self.algebra
        return PoissonPoly(algebra, {m: c for m, c in a.terms.items()
                                     if algebra.bi_weight(m)[0] == 0 and len(m) <= algebra.weight_cap},
                           weight_cap=self.bracket_cap)

    def weight(self, a: PoissonPoly) -> Optional[int]:
        found = [self.algebra.weight_cap - self.algebra.bi_weight(m)[0] for m in a.terms]
        return min(found) if found else None

    def in_l(self, monomial: Monomial) -> bool:
        p, q = self.algebra.bi_weight(monomial)
        return q >= 1 and (p >= 1 or q >= self.min_q)

    def in_h(self, monomial: Monomial) -> bool:
        p, q = self.algebra.bi_weight(monomial)
        return p == 0 and q >= self.min_q

    def _monomials(self, keep) -> List[Monomial]:
        found = []
        for k in range(1, self.algebra.weight_cap + 1):
            found.extend(m for m in basis_monomials(self.algebra.space.degrees, k) if keep(m))
        return found

    def l_basis(self) -> List[Tuple[str, PoissonPoly]]:
        if self._l_basis is None:
            monomials = self._monomials(self.in_l)
            self._l_index = {m: k for k, m in enumerate(monomials)}
            self._l_basis = [(self.algebra.monomial_text(m), self.algebra.monomial(m)) for m in monomials]
        return list(self._l_basis)

    def h_basis(self) -> List[Tuple[str, PoissonPoly]]:
        if self._h_basis is None:
            monomials = self._monomials(self.in_h)
            self._h_index = {m: k for k, m in enumerate(monomials)}
            self._h_basis = [(self.algebra.monomial_text(m), self.algebra.monomial(m)) for m in monomials]
        return list(self._h_basis)

    def _coordinates(self, a: PoissonPoly, index: Dict[Monomial, int], label: str) -> Dict[int, Fraction]:
        result = {}
        for monomial, c in a.terms.items():
            key = index.get(monomial)
            if key is None:
                raise AlgebraError(f"Term {self.algebra.monomial_text(monomial)} lies outside {label}")
            result[key] = c
        return result

    def l_coordinates(self, a: PoissonPoly) -> Dict[int, Fraction]:
        self.l_basis()
        return self._coordinates(a, self._l_index, self.name)

    def h_coordinates(self, a: PoissonPoly) -> Dict[int, Fraction]:
        self.h_basis()
        return self._coordinates(a, self._h_index, 'h')


def require_linfty(m: LInftyStructure):
    result = check_linfty(m)
    if not passed(result):
        raise PreconditionError(f"{m.name} is not an L-infinity algebra", report=result)


def schouten_vstructure(m: LInftyStructure, n: Optional[int] = None, include_linear: bool = False,
                        weight_cap: Optional[int] = None, algebra: Optional[PoissonAlgebra] = None) -> PoissonDgla:
    """The V-structure with d = {D_n(m), -}"""
    algebra = algebra if algebra is not None else poisson_algebra_for(m.space, n, m.cap, weight_cap)
    headroom = m.cap if include_linear else 0
    return PoissonDgla(algebra, double(m, algebra), min_q=1 if include_linear else 2, headroom=headroom,
                       name=f"Poisson({m.name}, n={algebra.n})")


def schouten_structure(m: LInftyStructure, n: Optional[int] = None, include_linear: bool = True,
                       cap: Optional[int] = None, weight_cap: Optional[int] = None) -> DerivedStructure:
    """
    Higher Schouten algebra of m: derived brackets P{...{D_n(m), h_1}..., h_k}
    on S(g[1-n])[n-1], truncated at weight W

    Args:
        include_linear: keep the linear part of S(g[1-n]); without it the result
            is the sub-algebra on the part of weight at least 2
    """
    require_linfty(m)
    vs = schouten_vstructure(m, n, include_linear, weight_cap)
    cap = cap if cap is not None else m.cap
    label = f"Schouten({m.name}, n={vs.algebra.n})"
    structure = derived_brackets_small(vs, cap=cap, name=label)
    logger.info(f"Built {label}: dim {structure.space.dim}, weight cap {vs.weight_cap}")
    return structure


def elementary_doubles(algebra: PoissonAlgebra, cap: int) -> List[Tuple[str, PoissonPoly]]:
    """D_n of every elementary derivation of S(g[1]) up to arity cap"""
    g_shifted = algebra.g_shifted
    symbols = g_shifted.symbols
    result = []
    for k in range(1, cap + 1):
        for monomial in basis_monomials(g_shifted.degrees, k):
            for t in range(g_shifted.dim):
                rep = DerivationRep(g_shifted, {monomial: g_shifted.basis_element(t)}, cap)
                result.append((f"{'*'.join(symbols[i] for i in monomial)}->{symbols[t]}", double(rep, algebra)))
    return result


def lhm_algebra(g: GradedSpace, n: Optional[int] = None, cap: Optional[int] = None) -> PoissonAlgebra:
    """Poisson algebra truncated exactly at the weight of arity-cap derivations"""
    cap = cap if cap is not None else Config.CAPS['max_arity']
    return PoissonAlgebra(g, n, cap + 1)


def build_lhm(g: GradedSpace, n: Optional[int] = None, cap: Optional[int] = None,
              algebra: Optional[PoissonAlgebra] = None) -> DerivedStructure:
    """
    L_LHM(g) = Der(S(g[1])) + (S_{>=2} g[1-n])[n-1] realized inside the Poisson
    algebra with d = 0: the doubled bracket on the derivation part, the mixed
    products P{...{D_n(Q), r_1}..., r_k}, and nothing else

    The weight cap is cap + 1, so the truncation matches the arity cap of the
    derivation part.
    """
    cap = cap if cap is not None else Config.CAPS['max_arity']
    algebra = algebra if algebra is not None else lhm_algebra(g, n, cap)
    vs = PoissonDgla(algebra, None, min_q=2, name=f"Poisson({g.name}, n={algebra.n})")
    big = derived_brackets_big(vs, elementary_doubles(algebra, cap), cap=cap,
                               name=f"L_LHM({g.name}, n={algebra.n})")
    logger.info(f"Built {big.name}: dim {big.offset} + {len(big.h_part)}")
    return big
