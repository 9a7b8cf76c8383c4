"""
V-Structures
Dglas with a projector onto an abelian subalgebra and an admissibility weight
"""

import itertools
import logging
import random
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sympy

from config.config import Config
from graded.errors import AlgebraError
from graded.signs import Monomial, basis_monomials
from graded.space import Element, GradedSpace
from graded.verdict import verdict
from brackets.derivation import DerivationRep, derivation_bracket
from linfty.dgla import BracketTable, Dgla, gl_structure

logger = logging.getLogger(__name__)


class VStructureDgla(ABC):
    """
    A dgla L with projector P onto an abelian subalgebra h

    Elements are whatever the concrete algebra uses (Element, DerivationRep,
    PoissonPoly); they only need +, -, scalar *, is_zero() and degree.
    """

    name = 'L'

    @abstractmethod
    def zero(self):
        pass

    @abstractmethod
    def bracket(self, a, b):
        pass

    @abstractmethod
    def differential(self, a):
        pass

    @abstractmethod
    def project(self, a):
        """P(a)"""

    @abstractmethod
    def weight(self, a) -> Optional[int]:
        """Least admissibility weight of a term of a, None for zero"""

    @abstractmethod
    def l_basis(self) -> List[Tuple[str, object]]:
        pass

    @abstractmethod
    def h_basis(self) -> List[Tuple[str, object]]:
        pass

    @abstractmethod
    def l_coordinates(self, a) -> Dict[int, Fraction]:
        pass

    @abstractmethod
    def h_coordinates(self, a) -> Dict[int, Fraction]:
        """Coordinates of an element of im P in h_basis()"""

    @property
    def weight_cap(self) -> int:
        return Config.CAPS['max_weight']

    def complement(self, a):
        return a - self.project(a)

    def ad(self, x, h):
        """Right adjoint action ad_h(x) = [x, h]"""
        return self.bracket(x, h)

    def degree(self, a) -> Optional[int]:
        return a.degree

    def combine(self, basis: List[Tuple[str, object]], coordinates: Dict[int, Fraction]):
        result = self.zero()
        for i, c in coordinates.items():
            result = result + basis[i][1] * c
        return result


def check_vstructure(vs: VStructureDgla) -> Dict:
    """
    P^2 = P, d(ker P) in ker P, [ker P, ker P] in ker P, [h, h] = 0, and the
    weight-raising admissibility certificate on basis elements
    """
    residuals = []
    l_basis = vs.l_basis()
    h_basis = vs.h_basis()
    kernel = []
    for symbol, b in l_basis:
        pb = vs.project(b)
        twice = vs.project(pb) - pb
        if not twice.is_zero():
            residuals.append({'relation': 'idempotent', 'element': symbol, 'residual': _text(twice)})
        k = b - pb
        if not k.is_zero():
            kernel.append((symbol, k))
    for symbol, k in kernel:
        escaped = vs.project(vs.differential(k))
        if not escaped.is_zero():
            residuals.append({'relation': 'kernel_differential', 'element': symbol, 'residual': _text(escaped)})
    for (s1, k1), (s2, k2) in itertools.combinations_with_replacement(kernel, 2):
        escaped = vs.project(vs.bracket(k1, k2))
        if not escaped.is_zero():
            residuals.append({'relation': 'kernel_bracket', 'element': f"{s1},{s2}", 'residual': _text(escaped)})
    for (s1, h1), (s2, h2) in itertools.combinations_with_replacement(h_basis, 2):
        value = vs.bracket(h1, h2)
        if not value.is_zero():
            residuals.append({'relation': 'abelian', 'element': f"{s1},{s2}", 'residual': _text(value)})
    for (s1, b), (s2, e) in itertools.product(l_basis, h_basis):
        value = vs.bracket(b, e)
        if value.is_zero():
            continue
        raised = vs.weight(value)
        if raised < vs.weight(b) + 1:
            residuals.append({'relation': 'admissible', 'element': f"{s1},{s2}",
                              'residual': f"weight {raised} <= {vs.weight(b)}"})
    logger.info(f"V-structure {vs.name}: {len(residuals)} residuals over {len(l_basis)} basis elements")
    return verdict('vstructure', residuals,
                   ['idempotent', 'kernel_differential', 'kernel_bracket', 'abelian', 'admissible'],
                   caps={'max_weight': vs.weight_cap}, dim_l=len(l_basis), dim_h=len(h_basis))


def _text(value) -> str:
    return value.to_text() if hasattr(value, 'to_text') else str(value)


def _fraction(value) -> Fraction:
    value = sympy.nsimplify(value)
    return Fraction(int(value.p), int(value.q))


class StructureConstantDgla(VStructureDgla):
    """
    V-structure on a finite dgla given by structure constants

    Args:
        dgla: bracket table and differential
        projector: dim x dim matrix of P (column j is P(e_j))
        weights: admissibility weight of every basis vector
    """

    def __init__(self, dgla: Dgla, projector, weights: Sequence[int], weight_cap: Optional[int] = None,
                 name: Optional[str] = None):
        self.dgla = dgla
        self.space = dgla.space
        self.name = name or dgla.name
        n = self.space.dim
        self.matrix = sympy.Matrix(n, n, lambda i, j: sympy.Rational(str(Fraction(projector[i][j]))))
        if len(weights) != n:
            raise AlgebraError(f"Need {n} weights, got {len(weights)}")
        self.weights = list(weights)
        self._cap = weight_cap if weight_cap is not None else max(self.weights, default=0)
        pivots = self.matrix.rref()[1]
        self._h_columns = [self.matrix[:, j] for j in pivots]
        self._h_basis = []
        for j, column in zip(pivots, self._h_columns):
            element = Element(self.space, {i: _fraction(column[i]) for i in range(n)})
            self._h_basis.append((f"P({self.space.symbols[j]})", element))
        self._h_matrix = sympy.Matrix.hstack(*self._h_columns) if self._h_columns else None
        self._columns = {j: {i: _fraction(self.matrix[i, j]) for i in range(n) if self.matrix[i, j] != 0}
                         for j in range(n)}

    @property
    def weight_cap(self) -> int:
        return self._cap

    def zero(self) -> Element:
        return self.space.zero()

    def bracket(self, a: Element, b: Element) -> Element:
        return self.dgla.bracket(a, b)

    def differential(self, a: Element) -> Element:
        return self.dgla.differential(a)

    def project(self, a: Element) -> Element:
        terms: Dict[int, Fraction] = {}
        for j, c in a.terms.items():
            for i, entry in self._columns[j].items():
                terms[i] = terms.get(i, 0) + c * entry
        return Element(self.space, terms)

    def weight(self, a: Element) -> Optional[int]:
        if a.is_zero():
            return None
        return min(self.weights[i] for i in a.terms)

    def l_basis(self) -> List[Tuple[str, Element]]:
        return [(s, self.space.basis_element(i)) for i, s in enumerate(self.space.symbols)]

    def h_basis(self) -> List[Tuple[str, Element]]:
        return list(self._h_basis)

    def l_coordinates(self, a: Element) -> Dict[int, Fraction]:
        return dict(a.terms)

    def h_coordinates(self, a: Element) -> Dict[int, Fraction]:
        if a.is_zero():
            return {}
        if self._h_matrix is None:
            raise AlgebraError(f"{a.to_text()} is not in im P = 0")
        target = sympy.Matrix([sympy.Rational(str(a.coefficient(i))) for i in range(self.space.dim)])
        try:
            solution, params = self._h_matrix.gauss_jordan_solve(target)
        except ValueError:
            raise AlgebraError(f"{a.to_text()} is not in im P")
        return {k: _fraction(solution[k]) for k in range(solution.rows) if solution[k] != 0}


class DerivationDgla(VStructureDgla):
    """
    Truncated derivations of S(W*) with the commutator bracket, d = [delta, -],
    P the projection onto a block of elementary derivations

    Args:
        space: shifted space W
        delta: MC element defining the differential (zero for d = 0)
        in_h: whether the elementary derivation (monomial -> output) lies in h
        term_weight: admissibility weight of an elementary derivation
        in_l: optional restriction of the basis to a sub-dgla
    """

    def __init__(self, space: GradedSpace, delta: Optional[DerivationRep],
                 in_h: Callable[[Monomial, int], bool], term_weight: Callable[[Monomial, int], int],
                 cap: Optional[int] = None, weight_cap: Optional[int] = None, name: str = 'Der',
                 in_l: Optional[Callable[[Monomial, int], bool]] = None):
        self.space = space
        self.cap = cap if cap is not None else Config.CAPS['max_arity']
        self.delta = delta if delta is not None else DerivationRep.zero(space, self.cap)
        self.in_h = in_h
        self.term_weight = term_weight
        self.in_l = in_l
        self.name = name
        self._weight_cap = weight_cap if weight_cap is not None else self.cap + 1
        self._l_basis: Optional[List[Tuple[str, DerivationRep]]] = None
        self._l_index: Dict[Tuple[Monomial, int], int] = {}
        self._h_basis: Optional[List[Tuple[str, DerivationRep]]] = None
        self._h_index: Dict[Tuple[Monomial, int], int] = {}

    @property
    def weight_cap(self) -> int:
        return self._weight_cap

    def zero(self) -> DerivationRep:
        return DerivationRep.zero(self.space, self.cap)

    def elementary(self, monomial: Monomial, output: int) -> DerivationRep:
        return DerivationRep(self.space, {monomial: self.space.basis_element(output)}, self.cap)

    def symbol(self, monomial: Monomial, output: int) -> str:
        return f"{'*'.join(self.space.symbols[i] for i in monomial)}->{self.space.symbols[output]}"

    def bracket(self, a: DerivationRep, b: DerivationRep) -> DerivationRep:
        return derivation_bracket(a, b, self.cap)

    def differential(self, a: DerivationRep) -> DerivationRep:
        if self.delta.is_zero():
            return self.zero()
        return derivation_bracket(self.delta, a, self.cap)

    def project(self, a: DerivationRep) -> DerivationRep:
        return a.filter_terms(self.in_h)

    def weight(self, a: DerivationRep) -> Optional[int]:
        found = [self.term_weight(m, t) for m, v in a.entries.items() for t in v.terms]
        return min(found) if found else None

    def _build(self):
        self._l_basis, self._h_basis = [], []
        for k in range(1, self.cap + 1):
            for monomial in basis_monomials(self.space.degrees, k):
                for t in range(self.space.dim):
                    if self.in_l is not None and not self.in_l(monomial, t) and not self.in_h(monomial, t):
                        continue
                    element = self.elementary(monomial, t)
                    symbol = self.symbol(monomial, t)
                    if self.in_l is None or self.in_l(monomial, t):
                        self._l_index[(monomial, t)] = len(self._l_basis)
                        self._l_basis.append((symbol, element))
                    if self.in_h(monomial, t):
                        self._h_index[(monomial, t)] = len(self._h_basis)
                        self._h_basis.append((symbol, element))

    def l_basis(self) -> List[Tuple[str, DerivationRep]]:
        if self._l_basis is None:
            self._build()
        return list(self._l_basis)

    def h_basis(self) -> List[Tuple[str, DerivationRep]]:
        if self._h_basis is None:
            self._build()
        return list(self._h_basis)

    def _coordinates(self, a: DerivationRep, index: Dict[Tuple[Monomial, int], int], label: str):
        if self._l_basis is None:
            self._build()
        result = {}
        for monomial, output, c in a.terms():
            key = index.get((monomial, output))
            if key is None:
                raise AlgebraError(f"Term {self.symbol(monomial, output)} lies outside {label}")
            result[key] = c
        return result

    def l_coordinates(self, a: DerivationRep) -> Dict[int, Fraction]:
        return self._coordinates(a, self._l_index, self.name)

    def h_coordinates(self, a: DerivationRep) -> Dict[int, Fraction]:
        return self._coordinates(a, self._h_index, 'h')


def _upper_triangular(degrees: Sequence[int], name: str) -> Tuple[Dgla, List[Tuple[int, int]]]:
    """Strictly upper triangular part of gl(V) for V with the given degrees"""
    V = GradedSpace(f"V{name}", [(f"v{i + 1}", d) for i, d in enumerate(degrees)])
    gl = gl_structure(V)
    n = V.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = [i * n + j for i, j in pairs]
    position = {g: p for p, g in enumerate(keep)}
    space = GradedSpace(name, [(f"E{i + 1}{j + 1}", gl.space.degrees[i * n + j]) for i, j in pairs])
    table = {}
    for a, b in itertools.combinations_with_replacement(range(len(keep)), 2):
        value = gl.brackets.basis_bracket(keep[a], keep[b])
        if not value.is_zero():
            table[(a, b)] = Element(space, {position[g]: c for g, c in value.terms.items()})
    return Dgla(space, BracketTable(space, table), name=name), pairs


def random_vstructure(rng: random.Random, size: int = 4, name: str = 'u') -> StructureConstantDgla:
    """
    Random admissible V-structure on strictly upper triangular matrices

    The weight of E_ij is j - i, so every bracket raises weight. h is a random
    abelian span of elementary matrices whose complement is a subalgebra, and
    d = [delta, -] for a random square-zero delta of degree 1 in the complement.
    """
    degrees = [rng.choice((-1, 0, 0, 1)) for _ in range(size)]
    dgla, pairs = _upper_triangular(degrees, name)
    dim = dgla.space.dim
    basis = [dgla.space.basis_element(i) for i in range(dim)]

    def admissible_block(chosen):
        kernel = [i for i in range(dim) if i not in chosen]
        for a, b in itertools.combinations_with_replacement(chosen, 2):
            if not dgla.bracket(basis[a], basis[b]).is_zero():
                return False
        for a, b in itertools.combinations_with_replacement(kernel, 2):
            if any(k in chosen for k in dgla.bracket(basis[a], basis[b]).terms):
                return False
        return True

    blocks = [set(c) for r in range(1, dim) for c in itertools.combinations(range(dim), r)
              if admissible_block(set(c))]
    chosen = rng.choice(blocks) if blocks else set()
    kernel = [i for i in range(dim) if i not in chosen]
    delta = dgla.space.zero()
    candidates = [i for i in kernel if dgla.space.degrees[i] == 1]
    for i in candidates:
        if rng.random() < 0.6:
            delta = delta + basis[i] * rng.choice((1, -1, 2))
    if not dgla.bracket(delta, delta).is_zero():
        delta = dgla.space.zero()
    differential = {}
    for j in range(dim):
        value = dgla.bracket(delta, basis[j])
        if not value.is_zero():
            differential[j] = value
    dgla = Dgla(dgla.space, dgla.brackets, differential, name=name)
    projector = [[1 if (i == j and i in chosen) else 0 for j in range(dim)] for i in range(dim)]
    weights = [j - i for i, j in pairs]
    logger.debug(f"Random V-structure {name}: degrees {degrees}, h = {sorted(chosen)}")
    return StructureConstantDgla(dgla, projector, weights, weight_cap=size - 1, name=name)
