"""
L-infinity Morphisms
Degree-0 component families between L-infinity algebras and the morphism relation
"""

import logging
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence

from graded.errors import AlgebraError, SpaceMismatchError
from graded.signs import Monomial, basis_monomials, cached_sign, compositions, multi_unshuffles, unshuffles
from graded.space import Element, GradedSpace, sum_elements
from graded.verdict import verdict
from brackets.multimap import MultiMap, expand_arguments
from linfty.dgla import Dgla, adjoint_matrices, gl_element, gl_structure
from linfty.structure import LInftyStructure, dgla_structure

logger = logging.getLogger(__name__)


class LInftyMorphism:
    """Components f_k: S^k(g[1]) -> h[1] of degree 0, k = 1..cap"""

    def __init__(self, source: LInftyStructure, target: LInftyStructure,
                 components: Optional[Dict[Sequence[int], Element]] = None, cap: Optional[int] = None,
                 name: Optional[str] = None):
        self.source = source
        self.target = target
        self.cap = cap if cap is not None else min(source.cap, target.cap)
        self.name = name or f"{source.name}->{target.name}"
        self.entries: Dict[Monomial, Element] = {}
        domain = source.shifted
        for word, value in (components or {}).items():
            if value.is_zero() or len(word) > self.cap:
                continue
            if value.space != target.shifted:
                raise SpaceMismatchError(f"Component value in {value.space.name}, expected {target.shifted.name}")
            monomial, sign = domain.normalize(word)
            if not sign:
                continue
            for i in value.terms:
                degree = target.shifted.degrees[i] - sum(domain.degrees[p] for p in monomial)
                if degree != 0:
                    raise AlgebraError(f"Morphism component on {word} has degree {degree}, expected 0")
            current = self.entries.get(monomial)
            contribution = value if sign == 1 else -value
            self.entries[monomial] = contribution if current is None else current + contribution

    def value(self, indices: Sequence[int]) -> Element:
        monomial, sign = self.source.shifted.normalize(indices)
        entry = self.entries.get(monomial) if sign else None
        if entry is None:
            return self.target.shifted.zero()
        return entry if sign == 1 else -entry

    def component(self, k: int) -> MultiMap:
        entries = {m: v for m, v in self.entries.items() if len(m) == k}
        return MultiMap(self.source.shifted, self.target.shifted, k, 0, entries, validate=False)

    def evaluate(self, args: Sequence[Element]) -> Element:
        pieces = []
        for monomial, coefficient in expand_arguments(self.source.shifted, args).items():
            entry = self.entries.get(monomial)
            if entry is not None:
                pieces.append(entry * coefficient)
        return sum_elements(self.target.shifted, pieces)

    def is_strict(self) -> bool:
        return all(len(m) == 1 for m in self.entries)

    def __repr__(self) -> str:
        return f"LInftyMorphism({self.name}, {len(self.entries)} entries)"


def _lhs(morphism: LInftyMorphism, monomial: Monomial, parities) -> Element:
    """sum over unshuffles of f_(n-i+1)(m_i(...), ...)"""
    source = morphism.source
    n = len(monomial)
    result = morphism.target.shifted.zero()
    for i in range(1, n + 1):
        for sigma in unshuffles(i, n):
            inner = source.value(tuple(monomial[p] for p in sigma[:i]))
            if inner.is_zero():
                continue
            sign = cached_sign(sigma, parities)
            rest = tuple(monomial[p] for p in sigma[i:])
            for t, c in inner.terms.items():
                outer = morphism.value((t,) + rest)
                if not outer.is_zero():
                    result = result + outer * (sign * c)
    return result


def _rhs(morphism: LInftyMorphism, monomial: Monomial, parities) -> Element:
    """sum over j of 1/j! times target m_j applied to blocks of f-values"""
    target = morphism.target
    n = len(monomial)
    result = target.shifted.zero()
    for j in range(1, min(n, target.cap) + 1):
        scale = Fraction(1, factorial(j))
        for sizes in compositions(n, j):
            for sigma in multi_unshuffles(sizes):
                blocks = []
                start = 0
                for size in sizes:
                    value = morphism.value(tuple(monomial[p] for p in sigma[start:start + size]))
                    start += size
                    if value.is_zero():
                        break
                    blocks.append(value)
                if len(blocks) != j:
                    continue
                image = target.evaluate(blocks)
                if not image.is_zero():
                    result = result + image * (cached_sign(sigma, parities) * scale)
    return result


def check_morphism(morphism: LInftyMorphism) -> Dict:
    """
    Verify the L-infinity morphism relation on all basis monomials up to the cap

    Returns:
        Status dict with residuals (arity, monomial, residual)
    """
    source = morphism.source
    if morphism.cap > min(source.cap, morphism.target.cap):
        raise AlgebraError("Morphism cap exceeds the caps of its structures")
    domain = source.shifted
    residuals = []
    for n in range(1, morphism.cap + 1):
        for monomial in basis_monomials(domain.degrees, n):
            parities = tuple(domain.parities[i] for i in monomial)
            difference = _lhs(morphism, monomial, parities) - _rhs(morphism, monomial, parities)
            if not difference.is_zero():
                residuals.append({
                    'arity': n,
                    'monomial': "*".join(domain.symbols[i] for i in monomial),
                    'residual': difference.to_text(),
                })
        logger.debug(f"Morphism {morphism.name}: arity {n} checked")
    result = verdict('morphism', residuals, [f"arity {n}" for n in range(1, morphism.cap + 1)],
                     caps={'max_arity': morphism.cap}, morphism=morphism.name)
    if residuals:
        result['first_violation'] = residuals[0]
    return result


def strict_morphism(source: LInftyStructure, target: LInftyStructure, images: Dict[int, Element],
                    name: Optional[str] = None) -> LInftyMorphism:
    """f_1(x[1]) = f(x)[1]; images keyed by source basis index, valued in the unshifted target"""
    components = {}
    for j, value in images.items():
        components[(j,)] = Element(target.shifted, value.terms)
    return LInftyMorphism(source, target, components, name=name)


def matrix_morphism(source: LInftyStructure, target: LInftyStructure, matrix,
                    name: Optional[str] = None) -> LInftyMorphism:
    """Strict morphism from a dim(target) x dim(source) matrix"""
    images = {}
    for j in range(source.space.dim):
        images[j] = Element(target.space, {i: Fraction(matrix[i][j]) for i in range(target.space.dim)})
    return strict_morphism(source, target, images, name)


def identity_morphism(structure: LInftyStructure) -> LInftyMorphism:
    images = {j: structure.space.basis_element(j) for j in range(structure.space.dim)}
    return strict_morphism(structure, structure, images, name=f"id({structure.name})")


def representation_check(rho: LInftyMorphism) -> Dict:
    """A representation is an L-infinity morphism into gl(V)"""
    origin = rho.target.origin
    if origin is None or getattr(origin, 'represented', None) is None:
        raise AlgebraError(f"Target {rho.target.name} is not a gl(V) structure")
    result = check_morphism(rho)
    result['check'] = 'representation'
    return result


def adjoint_representation(dgla: Dgla, cap: Optional[int] = None) -> LInftyMorphism:
    """x -> ad_x into gl(g), strict"""
    source = dgla_structure(dgla, cap)
    gl = gl_structure(dgla.space, dgla.d)
    target = dgla_structure(gl, cap)
    images = {}
    for i, matrix in enumerate(adjoint_matrices(dgla)):
        images[i] = gl_element(dgla.space, gl.space, matrix)
    return strict_morphism(source, target, images, name=f"ad({dgla.name})")


def zero_representation(structure: LInftyStructure, V: GradedSpace) -> LInftyMorphism:
    target = dgla_structure(gl_structure(V), structure.cap)
    return LInftyMorphism(structure, target, {}, name=f"0:{structure.name}->gl({V.name})")


def representation_matrices(rho: LInftyMorphism) -> List:
    """Matrices of rho(e_i) for a strict representation"""
    from linfty.dgla import gl_matrix
    V = rho.target.origin.represented
    result = []
    for j in range(rho.source.space.dim):
        value = rho.value((j,))
        result.append(gl_matrix(V, Element(rho.target.space, value.terms)))
    return result
