"""
Homotopy Lie-Representation Pairs
The graded Lie algebra L_HLR(g, V) inside derivations of S((g + V)[1])* and
the pairs (m, rho) that are its MC elements
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.config import Config
from graded.errors import AlgebraError, SpaceMismatchError
from graded.signs import Monomial, basis_monomials
from graded.space import Element, GradedSpace
from graded.verdict import combine, verdict
from brackets.derivation import DerivationRep, derivation_bracket
from linfty.dgla import Dgla, gl_element, gl_space, gl_structure
from linfty.morphism import (LInftyMorphism, adjoint_representation, representation_check,
                             representation_matrices, strict_morphism)
from linfty.structure import LInftyStructure, check_linfty, dgla_structure, residual_entries

logger = logging.getLogger(__name__)


class HlrAlgebra:
    """
    L_HLR(g, V) realized on W = (g + V)[1]

    A term (inputs -> output) lies in L_HLR when its inputs are all in g and its
    output is in g, or when exactly one input is in V and the output is in V.
    The Rota-Baxter block h collects the terms with inputs all in V and output in g.
    """

    def __init__(self, g: GradedSpace, V: GradedSpace, cap: Optional[int] = None, name: Optional[str] = None):
        self.g = g
        self.V = V
        self.cap = cap if cap is not None else Config.CAPS['max_arity']
        self.offset = g.dim
        v_symbols = [f"{s}'" if s in g else s for s in V.symbols]
        self.unshifted = GradedSpace(name or f"{g.name}+{V.name}",
                                     list(g.basis) + list(zip(v_symbols, V.degrees)),
                                     blocks=[('g', 0, g.dim), ('V', g.dim, V.dim)])
        self.space = self.unshifted.shift(1)
        self.g_shifted = g.shift(1)
        self.gl = gl_space(V)
        self._basis: Optional[List[Tuple[str, DerivationRep]]] = None

    def v_count(self, monomial: Monomial) -> int:
        return sum(1 for i in monomial if i >= self.offset)

    def in_hlr(self, monomial: Monomial, output: int) -> bool:
        if output < self.offset:
            return self.v_count(monomial) == 0
        return self.v_count(monomial) == 1

    def in_rb_block(self, monomial: Monomial, output: int) -> bool:
        return output < self.offset and self.v_count(monomial) == len(monomial)

    def rb_weight(self, monomial: Monomial, output: int) -> int:
        """Number of V inputs, plus one for an output in g"""
        return self.v_count(monomial) + (1 if output < self.offset else 0)

    def zero(self) -> DerivationRep:
        return DerivationRep.zero(self.space, self.cap)

    def contains(self, element: DerivationRep) -> bool:
        return all(self.in_hlr(m, t) for m, t, _ in element.terms())

    def bracket(self, a: DerivationRep, b: DerivationRep) -> DerivationRep:
        for x in (a, b):
            if not self.contains(x):
                raise AlgebraError(f"Bracket argument lies outside L_HLR({self.g.name}, {self.V.name})")
        return derivation_bracket(a, b, self.cap)

    def basis(self) -> List[Tuple[str, DerivationRep]]:
        """Elementary derivations spanning L_HLR up to the arity cap"""
        if self._basis is None:
            self._basis = []
            symbols = self.space.symbols
            for k in range(1, self.cap + 1):
                for monomial in basis_monomials(self.space.degrees, k):
                    for t in range(self.space.dim):
                        if self.in_hlr(monomial, t):
                            rep = DerivationRep(self.space, {monomial: self.space.basis_element(t)}, self.cap)
                            self._basis.append((f"{'*'.join(symbols[i] for i in monomial)}->{symbols[t]}", rep))
        return list(self._basis)

    def embed(self, der: Optional[DerivationRep] = None, gl_parts: Optional[Dict[Sequence[int], Element]] = None,
              v_differential: Optional[Dict[int, Element]] = None) -> DerivationRep:
        """
        The element (D, phi) of L_HLR as a derivation of S(W*)

        Args:
            der: derivation of S(g[1]*), acting on the g inputs
            gl_parts: g[1]-monomial -> element A of gl(V); becomes (x..., v) -> (-1)^|A| A v
            v_differential: d_V on basis vectors of V; becomes v -> -(d_V v)
        """
        terms = []
        if der is not None:
            if der.space != self.g_shifted:
                raise SpaceMismatchError(f"Derivation acts on {der.space.name}, expected {self.g_shifted.name}")
            for monomial, output, c in der.terms():
                terms.append((monomial, output, c))
        n = self.V.dim
        for word, value in (gl_parts or {}).items():
            if value.space != self.gl:
                raise SpaceMismatchError(f"gl part lives in {value.space.name}, expected {self.gl.name}")
            for a, c in value.terms.items():
                i, j = divmod(a, n)
                sign = -1 if self.gl.degrees[a] % 2 else 1
                terms.append((tuple(word) + (self.offset + j,), self.offset + i, sign * c))
        for j, value in (v_differential or {}).items():
            for i, c in value.terms.items():
                terms.append(((self.offset + j,), self.offset + i, -c))
        return DerivationRep.from_terms(self.space, terms, self.cap)

    def split(self, element: DerivationRep) -> Tuple[DerivationRep, Dict[Monomial, Element], Dict[int, Element]]:
        """Inverse of embed: (D, gl parts, d_V)"""
        n = self.V.dim
        der_terms = []
        gl_terms: Dict[Monomial, Dict[int, Fraction]] = {}
        differential: Dict[int, Dict[int, Fraction]] = {}
        for monomial, output, c in element.terms():
            if not self.in_hlr(monomial, output):
                raise AlgebraError(f"Term {self.term_text(monomial, output)} lies outside L_HLR")
            if output < self.offset:
                der_terms.append((monomial, output, c))
                continue
            i, j = output - self.offset, monomial[-1] - self.offset
            if len(monomial) == 1:
                bucket = differential.setdefault(j, {})
                bucket[i] = bucket.get(i, 0) - c
                continue
            a = i * n + j
            sign = -1 if self.gl.degrees[a] % 2 else 1
            bucket = gl_terms.setdefault(monomial[:-1], {})
            bucket[a] = bucket.get(a, 0) + sign * c
        der = DerivationRep.from_terms(self.g_shifted, der_terms, self.cap)
        gl_parts = {m: Element(self.gl, t) for m, t in gl_terms.items() if any(t.values())}
        v_differential = {j: Element(self.V, t) for j, t in differential.items() if any(t.values())}
        return der, gl_parts, v_differential

    def term_text(self, monomial: Monomial, output: int) -> str:
        return f"{'*'.join(self.space.symbols[i] for i in monomial)}->{self.space.symbols[output]}"

    def jacobi_check(self, rng: Optional[random.Random] = None, samples: int = 10) -> Dict:
        """Graded Jacobi identity on random triples of basis elements"""
        rng = rng or random.Random(Config.RANDOM['seed'])
        basis = self.basis()
        residuals = []
        for _ in range(samples if basis else 0):
            (sa, a), (sb, b), (sc, c) = (rng.choice(basis) for _ in range(3))
            sign = -1 if (a.degree * b.degree) % 2 else 1
            lhs = self.bracket(a, self.bracket(b, c))
            rhs = self.bracket(self.bracket(a, b), c) + self.bracket(b, self.bracket(a, c)) * sign
            if lhs != rhs:
                residuals.append({'relation': 'jacobi', 'monomial': f"{sa},{sb},{sc}",
                                  'residual': (lhs - rhs).to_text()})
        return verdict('hlr_jacobi', residuals, ['jacobi'], caps={'max_arity': self.cap}, samples=samples)

    def __repr__(self) -> str:
        return f"HlrAlgebra({self.g.name}, {self.V.name}, cap {self.cap})"


def build_hlr(g: GradedSpace, V: GradedSpace, cap: Optional[int] = None) -> HlrAlgebra:
    algebra = HlrAlgebra(g, V, cap)
    logger.debug(f"Built {algebra!r} with {len(algebra.basis())} basis derivations")
    return algebra


def embed_hlr(algebra: HlrAlgebra, der: Optional[DerivationRep] = None,
              gl_parts: Optional[Dict[Sequence[int], Element]] = None,
              v_differential: Optional[Dict[int, Element]] = None) -> DerivationRep:
    return algebra.embed(der, gl_parts, v_differential)


class HLRPair:
    """
    An L-infinity algebra g with a representation on V

    Args:
        structure: L-infinity structure on g
        rho: L-infinity morphism g -> gl(V); the differential of V is read from its target
    """

    def __init__(self, structure: LInftyStructure, rho: LInftyMorphism, cap: Optional[int] = None,
                 name: Optional[str] = None):
        origin = rho.target.origin
        if origin is None or getattr(origin, 'represented', None) is None:
            raise AlgebraError(f"Target {rho.target.name} is not a gl(V) structure")
        if rho.source.space != structure.space:
            raise SpaceMismatchError(f"Representation of {rho.source.name}, expected {structure.name}")
        self.structure = structure
        self.rho = rho
        self.V = origin.represented
        self.v_differential = dict(getattr(origin, 'represented_differential', {}))
        self.cap = cap if cap is not None else min(structure.cap, rho.cap)
        self.algebra = HlrAlgebra(structure.space, self.V, self.cap)
        self.name = name or f"({structure.name}, {self.V.name})"
        self._element: Optional[DerivationRep] = None

    @property
    def element(self) -> DerivationRep:
        """Phi = m + rho in L_HLR"""
        if self._element is None:
            gl_parts = {m: Element(self.algebra.gl, v.terms) for m, v in self.rho.entries.items()}
            self._element = self.algebra.embed(self.structure.brackets.truncated(self.cap), gl_parts,
                                               self.v_differential)
        return self._element

    def check(self) -> Dict:
        """check_linfty(m) and the representation check of rho"""
        return combine('hlr_pair', [check_linfty(self.structure), representation_check(self.rho)],
                       caps={'max_arity': self.cap})

    def mc_check(self) -> Dict:
        """[Phi, Phi] = 0 in L_HLR"""
        square = derivation_bracket(self.element, self.element, self.cap)
        return verdict('hlr_mc', residual_entries(square), [f"arity {k}" for k in range(1, self.cap + 1)],
                       caps={'max_arity': self.cap})

    def matrices(self) -> List[np.ndarray]:
        return representation_matrices(self.rho)

    @classmethod
    def from_element(cls, algebra: HlrAlgebra, element: DerivationRep, name: Optional[str] = None) -> 'HLRPair':
        der, gl_parts, v_differential = algebra.split(element)
        structure = LInftyStructure(algebra.g, der, cap=algebra.cap, name=algebra.g.name)
        gl = gl_structure(algebra.V, v_differential)
        target = dgla_structure(gl, algebra.cap)
        components = {m: Element(target.shifted, value.terms) for m, value in gl_parts.items() if m}
        rho = LInftyMorphism(structure, target, components, cap=algebra.cap)
        return cls(structure, rho, algebra.cap, name)

    def __repr__(self) -> str:
        return f"HLRPair{self.name}"


def classical_pair(dgla: Dgla, matrices: Sequence, V: GradedSpace, cap: Optional[int] = None) -> HLRPair:
    """Lie algebra with a strict representation given by the matrices of rho(e_i)"""
    source = dgla_structure(dgla, cap)
    gl = gl_structure(V)
    target = dgla_structure(gl, cap)
    images = {i: gl_element(V, gl.space, matrix) for i, matrix in enumerate(matrices)}
    rho = strict_morphism(source, target, images, name=f"rho({dgla.name})")
    return HLRPair(source, rho, cap)


def adjoint_pair(dgla: Dgla, cap: Optional[int] = None) -> HLRPair:
    rho = adjoint_representation(dgla, cap)
    return HLRPair(rho.source, rho, cap, name=f"({dgla.name}, ad)")
