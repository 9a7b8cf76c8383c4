"""
Higher Derived Brackets
L-infinity structures on h[-1] and on L' + h[-1] built from a V-structure
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from config.config import Config
from graded.errors import AlgebraError
from graded.signs import Monomial
from graded.space import Element, GradedSpace
from graded.verdict import combine
from brackets.derivation import DerivationRep
from linfty.maurer_cartan import mc_residual
from linfty.morphism import LInftyMorphism, check_morphism
from linfty.structure import LInftyStructure
from derived.vstructure import VStructureDgla

logger = logging.getLogger(__name__)


class DerivedStructure(LInftyStructure):
    """L-infinity algebra of derived brackets together with the bases it was tabulated on"""

    def __init__(self, space: GradedSpace, brackets: DerivationRep, vs: VStructureDgla,
                 l_part: List[Tuple[str, object]], h_part: List[Tuple[str, object]],
                 sub: Optional['SubBasis'], name: str, filtration):
        super().__init__(space, brackets, name=name, filtration=filtration)
        self.vs = vs
        self.l_part = l_part
        self.h_part = h_part
        self.offset = len(l_part)
        self.sub = sub

    def h_element(self, h) -> Element:
        """h in im P as a vector of the h[-1] part of the shifted space"""
        coordinates = self.vs.h_coordinates(h)
        return Element(self.shifted, {self.offset + k: c for k, c in coordinates.items()})

    def l_element(self, x) -> Element:
        """x in L' as the vector x[1] of the shifted space"""
        if self.sub is None:
            raise AlgebraError(f"{self.name} has no L part")
        return Element(self.shifted, self.sub.coordinates(x))

    def pair(self, x, h) -> Element:
        return self.l_element(x) + self.h_element(h)

    def h_value(self, element: Element):
        """Element of L from the h[-1] coordinates of a shifted vector"""
        result = self.vs.zero()
        for i, c in element.terms.items():
            if i >= self.offset:
                result = result + self.h_part[i - self.offset][1] * c
        return result

    def l_value(self, element: Element):
        result = self.vs.zero()
        for i, c in element.terms.items():
            if i < self.offset:
                result = result + self.l_part[i][1] * c
        return result


class SubBasis:
    """
    Basis of a sub-dgla L' whose vectors are multiples of distinct basis vectors of L
    """

    def __init__(self, vs: VStructureDgla, basis: List[Tuple[str, object]]):
        self.vs = vs
        self.basis = basis
        self.position: Dict[int, Tuple[int, Fraction]] = {}
        for k, (symbol, element) in enumerate(basis):
            coordinates = vs.l_coordinates(element)
            if len(coordinates) != 1:
                raise AlgebraError(f"Sub-basis vector {symbol} is not a multiple of a basis vector of {vs.name}")
            (index, scale), = coordinates.items()
            if index in self.position:
                raise AlgebraError(f"Sub-basis vectors repeat the basis direction of {symbol}")
            self.position[index] = (k, scale)

    def coordinates(self, a) -> Dict[int, Fraction]:
        result = {}
        for index, c in self.vs.l_coordinates(a).items():
            found = self.position.get(index)
            if found is None:
                raise AlgebraError(f"Sub-dgla of {self.vs.name} is not closed: {self.vs.l_basis()[index][0]}")
            k, scale = found
            result[k] = c / scale
        return result


def _certificate(vs: VStructureDgla, l_part, h_part) -> Tuple[Dict[int, int], int]:
    """
    Weak filtration from the admissibility weight: basis vectors of L[1] and
    h[-1] get their weight shifted to start at 1

    Every bracket with h raises the weight, so m_k lands in F_k for k above
    level: 1 on h[-1] alone, 2 once m_2(L, L) -> L is present.
    """
    found = [vs.weight(e) for _, e in list(l_part) + list(h_part)]
    lowest = min([0] + [w for w in found if w is not None])
    weights = {i: (w if w is not None else lowest) - lowest + 1 for i, w in enumerate(found)}
    level = 2 if l_part else 1
    return weights, level


def _nested(vs: VStructureDgla, start, h_part, offset: int, prefix: Monomial, first_h: int, cap: int,
            shifted: GradedSpace, entries: Dict[Monomial, Element]):
    """Tabulate P[...[start, h_j1]..., h_jr] over nondecreasing j1 <= j2 <= ..."""
    if len(prefix) >= cap:
        return
    for j in range(first_h, len(h_part)):
        if prefix and prefix[-1] == offset + j and shifted.parities[offset + j]:
            continue
        value = vs.bracket(start, h_part[j][1])
        if value.is_zero():
            continue
        monomial = prefix + (offset + j,)
        projected = vs.project(value)
        if not projected.is_zero():
            entries[monomial] = Element(shifted, {offset + k: c for k, c in vs.h_coordinates(projected).items()})
        _nested(vs, value, h_part, offset, monomial, j, cap, shifted, entries)


def derived_brackets_small(vs: VStructureDgla, cap: Optional[int] = None,
                           name: Optional[str] = None) -> DerivedStructure:
    """
    m_k(h_1, ..., h_k) = P[...[d h_1, h_2]..., h_k] on h[-1]
    """
    cap = cap if cap is not None else Config.CAPS['max_arity']
    h_part = vs.h_basis()
    space = GradedSpace(name or f"h[-1]({vs.name})", [(s, vs.degree(e) + 1) for s, e in h_part])
    shifted = space.shift(1)
    entries: Dict[Monomial, Element] = {}
    for i, (symbol, h) in enumerate(h_part):
        dh = vs.differential(h)
        if dh.is_zero():
            continue
        projected = vs.project(dh)
        if not projected.is_zero():
            entries[(i,)] = Element(shifted, vs.h_coordinates(projected))
        _nested(vs, dh, h_part, 0, (i,), i, cap, shifted, entries)
    brackets = DerivationRep(shifted, entries, cap)
    filtration = _certificate(vs, [], h_part)
    logger.info(f"Derived brackets on h[-1] of {vs.name}: {len(entries)} entries, dim {len(h_part)}")
    return DerivedStructure(space, brackets, vs, [], h_part, None, space.name, filtration)


def derived_brackets_big(vs: VStructureDgla, sub_basis: Optional[List[Tuple[str, object]]] = None,
                         cap: Optional[int] = None, name: Optional[str] = None) -> DerivedStructure:
    """
    The L-infinity algebra L' + h[-1]

        m_1(x[1], h) = (-(dx)[1], P(x + dh))
        m_2(x[1], y[1]) = (-1)^|x| [x, y][1]
        m_k(x[1], h_1, ..., h_(k-1)) = P[...[x, h_1]..., h_(k-1)]
        m_k(h_1, ..., h_k) = P[...[d h_1, h_2]..., h_k]

    Args:
        vs: the V-structure
        sub_basis: basis of a sub-dgla L' (defaults to all of L)
        cap: arity cap
    """
    cap = cap if cap is not None else Config.CAPS['max_arity']
    l_part = list(sub_basis) if sub_basis is not None else vs.l_basis()
    sub = SubBasis(vs, l_part)
    h_part = vs.h_basis()
    offset = len(l_part)
    basis = [(s, vs.degree(x)) for s, x in l_part] + [(f"{s}[-1]", vs.degree(h) + 1) for s, h in h_part]
    label = name or f"{vs.name}+h[-1]"
    space = GradedSpace(label, basis, blocks=[('L', 0, offset), ('h[-1]', offset, len(h_part))])
    shifted = space.shift(1)

    def h_vector(value) -> Dict[int, Fraction]:
        return {offset + k: c for k, c in vs.h_coordinates(value).items()}

    entries: Dict[Monomial, Element] = {}
    for a, (symbol, x) in enumerate(l_part):
        terms = {k: -c for k, c in sub.coordinates(vs.differential(x)).items()}
        projected = vs.project(x)
        if not projected.is_zero():
            terms.update(h_vector(projected))
        if terms:
            entries[(a,)] = Element(shifted, terms)
    for a, (symbol, x) in enumerate(l_part):
        sign = -1 if vs.degree(x) % 2 else 1
        for b in range(a, len(l_part)):
            if b == a and shifted.parities[a]:
                continue
            value = vs.bracket(x, l_part[b][1])
            if not value.is_zero():
                entries[(a, b)] = Element(shifted, {k: sign * c for k, c in sub.coordinates(value).items()})
        _nested(vs, x, h_part, offset, (a,), 0, cap, shifted, entries)
    for i, (symbol, h) in enumerate(h_part):
        dh = vs.differential(h)
        if dh.is_zero():
            continue
        projected = vs.project(dh)
        if not projected.is_zero():
            entries[(offset + i,)] = Element(shifted, h_vector(projected))
        _nested(vs, dh, h_part, offset, (offset + i,), i, cap, shifted, entries)
    brackets = DerivationRep(shifted, entries, cap)
    filtration = _certificate(vs, l_part, h_part)
    logger.info(f"Derived brackets on {label}: {len(entries)} entries, dim {offset} + {len(h_part)}")
    return DerivedStructure(space, brackets, vs, l_part, h_part, sub, label, filtration)


def big_mc_residual(big: DerivedStructure, x, h) -> Element:
    """MC residual of (x[1], h) in L' + h[-1]"""
    return mc_residual(big, big.pair(x, h))


def l_part_structure(big: DerivedStructure) -> LInftyStructure:
    """The dgla L' in shifted form, read off the L[1] block of the big algebra"""
    offset = big.offset
    space = GradedSpace(f"{big.vs.name}'", [big.space.basis[i] for i in range(offset)])
    shifted = space.shift(1)
    entries = {}
    for monomial, value in big.brackets.entries.items():
        if all(i < offset for i in monomial):
            kept = {i: c for i, c in value.terms.items() if i < offset}
            if kept:
                entries[monomial] = Element(shifted, kept)
    return LInftyStructure(space, DerivationRep(shifted, entries, big.cap), name=space.name)


def check_extension(vs: VStructureDgla, big: Optional[DerivedStructure] = None,
                    small: Optional[DerivedStructure] = None) -> Dict:
    """
    h[-1] -> L' + h[-1] -> L' is an L-infinity extension: the inclusion and the
    projection are strict L-infinity maps
    """
    big = big if big is not None else derived_brackets_big(vs)
    small = small if small is not None else derived_brackets_small(vs, cap=big.cap)
    offset = big.offset
    quotient = l_part_structure(big)
    projection = LInftyMorphism(big, quotient, {
        (a,): quotient.shifted.basis_element(a) for a in range(offset)
    }, name='projection')
    inclusion = LInftyMorphism(small, big, {
        (k,): big.shifted.basis_element(offset + k) for k in range(small.space.dim)
    }, name='inclusion')
    parts = [check_morphism(projection), check_morphism(inclusion)]
    return combine('extension', parts, caps={'max_arity': big.cap})
