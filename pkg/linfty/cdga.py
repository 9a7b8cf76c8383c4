"""
Nilpotent Coefficient Algebras
Finite cdgas with nilpotent augmentation ideal and scalar extension of L-infinity data
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from graded.errors import AlgebraError, SpaceMismatchError
from graded.signs import Monomial
from graded.space import Element, GradedSpace, Scalar
from graded.verdict import verdict
from brackets.derivation import DerivationRep
from linfty.morphism import LInftyMorphism
from linfty.structure import LInftyStructure

logger = logging.getLogger(__name__)


class NilpotentCdga:
    """
    Finite-dimensional cdga A = k.1 + A_{>=1} with (A_{>=1})^nu = 0

    Basis index 0 is the unit. Products are given on pairs of ideal basis
    vectors i <= j; the opposite order follows graded commutativity.
    """

    def __init__(self, name: str, basis: Sequence[Tuple[str, int]],
                 products: Optional[Dict[Tuple[int, int], Element]] = None,
                 differential: Optional[Dict[int, Element]] = None):
        self.name = name
        self.space = GradedSpace(name, [('1', 0)] + list(basis))
        self.products: Dict[Tuple[int, int], Element] = {}
        for (i, j), value in (products or {}).items():
            self.set_product(i, j, value)
        self.d: Dict[int, Element] = {}
        for j, value in (differential or {}).items():
            self.set_differential(j, value)
        self._nilpotency: Optional[int] = None

    def set_product(self, i: int, j: int, value: Element):
        if 0 in (i, j):
            raise AlgebraError("Products with the unit are fixed")
        if value.space != self.space:
            value = Element(self.space, value.terms)
        if value.coefficient(0):
            raise AlgebraError(f"Product of ideal elements {i},{j} has a unit component")
        if i > j:
            sign = -1 if (self.space.degrees[i] * self.space.degrees[j]) % 2 else 1
            i, j, value = j, i, value * sign
        self.products[(i, j)] = value
        self._nilpotency = None

    def set_differential(self, j: int, value: Element):
        if j == 0:
            raise AlgebraError("The differential kills the unit")
        if value.space != self.space:
            value = Element(self.space, value.terms)
        if not value.is_zero():
            self.d[j] = value

    @property
    def ideal_indices(self) -> List[int]:
        return list(range(1, self.space.dim))

    def degree(self, i: int) -> int:
        return self.space.degrees[i]

    def basis_product(self, i: int, j: int) -> Element:
        if i == 0:
            return self.space.basis_element(j)
        if j == 0:
            return self.space.basis_element(i)
        if i <= j:
            value = self.products.get((i, j))
            return value if value is not None else self.space.zero()
        value = self.products.get((j, i))
        if value is None:
            return self.space.zero()
        return value * (-1 if (self.space.degrees[i] * self.space.degrees[j]) % 2 else 1)

    def multiply(self, a: Element, b: Element) -> Element:
        terms: Dict[int, Fraction] = {}
        for i, c in a.terms.items():
            for j, e in b.terms.items():
                for k, f in self.basis_product(i, j).terms.items():
                    terms[k] = terms.get(k, 0) + c * e * f
        return Element(self.space, terms)

    def product_of(self, indices: Sequence[int]) -> Element:
        result = self.space.basis_element(0)
        for i in indices:
            result = self.multiply(result, self.space.basis_element(i))
            if result.is_zero():
                break
        return result

    def differential(self, a: Element) -> Element:
        terms: Dict[int, Fraction] = {}
        for j, c in a.terms.items():
            for i, e in self.d.get(j, self.space.zero()).terms.items():
                terms[i] = terms.get(i, 0) + c * e
        return Element(self.space, terms)

    @property
    def nilpotency(self) -> int:
        """Least nu with (A_{>=1})^nu = 0, found by explicit powering"""
        if self._nilpotency is None:
            power = [self.space.basis_element(i) for i in self.ideal_indices]
            nu = 1
            while power:
                if nu > self.space.dim + 1:
                    raise AlgebraError(f"Augmentation ideal of {self.name} is not nilpotent")
                products = []
                for x in power:
                    for i in self.ideal_indices:
                        value = self.multiply(x, self.space.basis_element(i))
                        if not value.is_zero():
                            products.append(value)
                power = list(dict.fromkeys(products))
                nu += 1
            self._nilpotency = nu
        return self._nilpotency

    def element(self, coefficients: Dict[str, Scalar]) -> Element:
        return self.space.element(coefficients)

    def __repr__(self) -> str:
        return f"NilpotentCdga({self.name}, dim {self.space.dim})"


def check_cdga(algebra: NilpotentCdga) -> Dict:
    """d^2 = 0, Leibniz, associativity, degree bookkeeping and nilpotency"""
    residuals = []
    space = algebra.space
    basis = [space.basis_element(i) for i in range(space.dim)]
    symbols = space.symbols
    for i, a in enumerate(basis):
        dd = algebra.differential(algebra.differential(a))
        if not dd.is_zero():
            residuals.append({'relation': 'd^2', 'monomial': symbols[i], 'residual': dd.to_text()})
        da = algebra.differential(a)
        if not da.is_zero() and (da.degree != space.degrees[i] + 1 or da.coefficient(0)):
            residuals.append({'relation': 'differential', 'monomial': symbols[i], 'residual': da.to_text()})
    for i, j in itertools.product(range(space.dim), repeat=2):
        a, b = basis[i], basis[j]
        ab = algebra.multiply(a, b)
        if not ab.is_zero() and ab.degree != space.degrees[i] + space.degrees[j]:
            residuals.append({'relation': 'degree', 'monomial': f"{symbols[i]}*{symbols[j]}",
                              'residual': ab.to_text()})
        lhs = algebra.differential(ab)
        rhs = (algebra.multiply(algebra.differential(a), b)
               + algebra.multiply(a, algebra.differential(b)) * (-1) ** space.degrees[i])
        if lhs != rhs:
            residuals.append({'relation': 'leibniz', 'monomial': f"{symbols[i]}*{symbols[j]}",
                              'residual': (lhs - rhs).to_text()})
    for i, j, k in itertools.product(range(1, space.dim), repeat=3):
        a, b, c = basis[i], basis[j], basis[k]
        lhs = algebra.multiply(algebra.multiply(a, b), c)
        rhs = algebra.multiply(a, algebra.multiply(b, c))
        if lhs != rhs:
            residuals.append({'relation': 'associativity', 'monomial': f"{symbols[i]}*{symbols[j]}*{symbols[k]}",
                              'residual': (lhs - rhs).to_text()})
    try:
        nu = algebra.nilpotency
    except AlgebraError as e:
        residuals.append({'relation': 'nilpotency', 'monomial': algebra.name, 'residual': str(e)})
        nu = None
    return verdict('cdga', residuals, ['d^2', 'differential', 'degree', 'leibniz', 'associativity',
                                       'nilpotency'], nilpotency=nu)


def dual_numbers() -> NilpotentCdga:
    """k[eps]/(eps^2), d = 0"""
    return NilpotentCdga('k[eps]', [('eps', 0)])


def truncated_polynomials(nu: int) -> NilpotentCdga:
    """k[t]/(t^nu), d = 0"""
    if nu < 2:
        raise AlgebraError("k[t]/(t^nu) needs nu >= 2")
    basis = [('t' if p == 1 else f"t^{p}", 0) for p in range(1, nu)]
    algebra = NilpotentCdga(f"k[t]/t^{nu}", basis)
    for p in range(1, nu):
        for q in range(p, nu):
            if p + q < nu:
                algebra.set_product(p, q, algebra.space.basis_element(p + q))
    return algebra


def exterior_cdga(k: int) -> NilpotentCdga:
    """Exterior algebra on k odd generators of degree 1, d = 0"""
    subsets = [s for size in range(1, k + 1) for s in itertools.combinations(range(1, k + 1), size)]
    basis = [("".join(f"th{g}" for g in s), len(s)) for s in subsets]
    algebra = NilpotentCdga(f"Lambda({k})", basis)
    position = {s: n + 1 for n, s in enumerate(subsets)}
    for s, t in itertools.product(subsets, repeat=2):
        a, b = position[s], position[t]
        if a > b or set(s) & set(t):
            continue
        word = s + t
        inversions = sum(1 for p in range(len(word)) for q in range(p + 1, len(word)) if word[p] > word[q])
        merged = tuple(sorted(word))
        algebra.set_product(a, b, algebra.space.basis_element(position[merged]) * (-1) ** inversions)
    return algebra


class CdgaMorphism:
    """Unital degree-0 map A -> B given on ideal basis vectors"""

    def __init__(self, source: NilpotentCdga, target: NilpotentCdga, images: Dict[int, Element]):
        self.source = source
        self.target = target
        self.images = dict(images)

    def apply(self, a: Element) -> Element:
        terms: Dict[int, Fraction] = {}
        for i, c in a.terms.items():
            image = self.target.space.basis_element(0) if i == 0 else self.images.get(i, self.target.space.zero())
            for k, e in image.terms.items():
                terms[k] = terms.get(k, 0) + c * e
        return Element(self.target.space, terms)

    def check(self) -> Dict:
        residuals = []
        A, B = self.source, self.target
        for i in A.ideal_indices:
            image = self.apply(A.space.basis_element(i))
            if image.coefficient(0) or (not image.is_zero() and image.degree != A.degree(i)):
                residuals.append({'relation': 'ideal', 'monomial': A.space.symbols[i], 'residual': image.to_text()})
            lhs = self.apply(A.differential(A.space.basis_element(i)))
            rhs = B.differential(image)
            if lhs != rhs:
                residuals.append({'relation': 'differential', 'monomial': A.space.symbols[i],
                                  'residual': (lhs - rhs).to_text()})
        for i, j in itertools.product(A.ideal_indices, repeat=2):
            lhs = self.apply(A.basis_product(i, j))
            rhs = B.multiply(self.apply(A.space.basis_element(i)), self.apply(A.space.basis_element(j)))
            if lhs != rhs:
                residuals.append({'relation': 'product', 'monomial': f"{A.space.symbols[i]}*{A.space.symbols[j]}",
                                  'residual': (lhs - rhs).to_text()})
        return verdict('cdga_morphism', residuals, ['ideal', 'differential', 'product'])


class ExtendedStructure(LInftyStructure):
    """A_{>=1} (x) g with the A-linear extension of the brackets"""

    def __init__(self, base: LInftyStructure, algebra: NilpotentCdga, brackets: DerivationRep, space: GradedSpace):
        self.base = base
        self.algebra = algebra
        super().__init__(space, brackets, name=f"{algebra.name}+(x){base.name}")

    def position(self, a: int, x: int) -> int:
        return (a - 1) * self.base.space.dim + x

    def tensor(self, a: Element, x: Element) -> Element:
        """a (x) x with a in A (unit part dropped) and x in g[1]"""
        if x.space != self.base.shifted:
            raise SpaceMismatchError(f"Expected an element of {self.base.shifted.name}")
        terms: Dict[int, Fraction] = {}
        for i, c in a.terms.items():
            if i == 0:
                continue
            for j, e in x.terms.items():
                terms[self.position(i, j)] = c * e
        return Element(self.shifted, terms)

    def element(self, pairs: Dict[Tuple[str, str], Scalar]) -> Element:
        """Element of the shifted space from {(a symbol, x symbol): coefficient}"""
        terms = {}
        for (a, x), c in pairs.items():
            terms[self.position(self.algebra.space.index(a), self.base.shifted.index(x))] = Fraction(c)
        return Element(self.shifted, terms)


def tensor_space(base: GradedSpace, algebra: NilpotentCdga) -> GradedSpace:
    basis = []
    for a in algebra.ideal_indices:
        for x in range(base.dim):
            basis.append((f"{algebra.space.symbols[a]}.{base.symbols[x]}", algebra.degree(a) + base.degrees[x]))
    return GradedSpace(f"{algebra.name}+(x){base.name}", basis)


def _extension_sign(algebra: NilpotentCdga, shifted: GradedSpace, a_word: Sequence[int],
                    x_word: Sequence[int], degree: int) -> int:
    """(-1)^(sum |a_i| (|x_1|+...+|x_(i-1)| + degree)) for an operation of the given degree"""
    exponent = 0
    passed = 0
    for a, x in zip(a_word, x_word):
        exponent += algebra.degree(a) * (passed + degree)
        passed += shifted.degrees[x]
    return -1 if exponent % 2 else 1


def _extend_family(base_shifted: GradedSpace, target_shifted: GradedSpace, algebra: NilpotentCdga,
                   entries: Dict[Monomial, Element], source_space: GradedSpace, target_space: GradedSpace,
                   degree: int, cap: int) -> Dict[Monomial, Element]:
    """A-linear extension of a family of multilinear maps of the given degree"""
    source_dim = base_shifted.dim
    target_dim = target_shifted.dim
    extended: Dict[Monomial, Element] = {}
    for monomial, value in entries.items():
        k = len(monomial)
        for a_word in itertools.product(algebra.ideal_indices, repeat=k):
            product = algebra.product_of(a_word)
            if product.is_zero():
                continue
            word = tuple((a - 1) * source_dim + x for a, x in zip(a_word, monomial))
            normal, sign = source_space.normalize(word)
            if not sign or normal in extended:
                continue
            sign *= _extension_sign(algebra, base_shifted, a_word, monomial, degree)
            terms: Dict[int, Fraction] = {}
            for b, c in product.terms.items():
                for y, e in value.terms.items():
                    key = (b - 1) * target_dim + y
                    terms[key] = terms.get(key, 0) + sign * c * e
            extended[normal] = Element(target_space, terms)
    return extended


def extend_scalars(structure: LInftyStructure, algebra: NilpotentCdga) -> ExtendedStructure:
    """
    The L-infinity algebra A_{>=1} (x) g

    m_1(a.x) = d_A a . x + (-1)^|a| a . m_1 x; for n >= 2 the brackets pick up
    (-1)^(sum |a_i| (|x_1|+...+|x_(i-1)| + 1)) (a_1...a_n) . m_n(x_1..x_n).
    """
    space = tensor_space(structure.space, algebra)
    shifted = space.shift(1)
    entries = _extend_family(structure.shifted, structure.shifted, algebra, structure.brackets.entries,
                             shifted, shifted, 1, structure.cap)
    dim = structure.space.dim
    for a, da in algebra.d.items():
        for x in range(dim):
            key = ((a - 1) * dim + x,)
            addition = Element(shifted, {(b - 1) * dim + x: c for b, c in da.terms.items()})
            current = entries.get(key)
            entries[key] = addition if current is None else current + addition
    brackets = DerivationRep(shifted, entries, structure.cap)
    logger.debug(f"Extended {structure.name} over {algebra.name}: {len(brackets.entries)} entries")
    return ExtendedStructure(structure, algebra, brackets, space)


def extend_morphism(morphism: LInftyMorphism, algebra: NilpotentCdga,
                    source: Optional[ExtendedStructure] = None,
                    target: Optional[ExtendedStructure] = None) -> LInftyMorphism:
    """f_n(a_1.x_1, ...) = (-1)^(sum |a_i| (|x_1|+...+|x_(i-1)|)) (a_1...a_n) . f_n(x)"""
    source = source or extend_scalars(morphism.source, algebra)
    target = target or extend_scalars(morphism.target, algebra)
    entries = _extend_family(morphism.source.shifted, morphism.target.shifted, algebra, morphism.entries,
                             source.shifted, target.shifted, 0, morphism.cap)
    return LInftyMorphism(source, target, entries, cap=morphism.cap, name=f"{algebra.name}+(x){morphism.name}")


def cdga_base_change(structure: LInftyStructure, phi: CdgaMorphism,
                     source: Optional[ExtendedStructure] = None,
                     target: Optional[ExtendedStructure] = None) -> LInftyMorphism:
    """The strict map phi (x) id between A_{>=1} (x) g and B_{>=1} (x) g"""
    source = source or extend_scalars(structure, phi.source)
    target = target or extend_scalars(structure, phi.target)
    dim = structure.space.dim
    components = {}
    for a in phi.source.ideal_indices:
        image = phi.apply(phi.source.space.basis_element(a))
        for x in range(dim):
            terms = {(b - 1) * dim + x: c for b, c in image.terms.items() if b != 0}
            components[((a - 1) * dim + x,)] = Element(target.shifted, terms)
    return LInftyMorphism(source, target, components, name=f"{phi.source.name}->{phi.target.name}")
