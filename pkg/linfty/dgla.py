"""
Differential Graded Lie Algebras
Structure-constant dglas, gl(V), and the classical identities used as oracles
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from graded.errors import AlgebraError
from graded.space import Element, GradedSpace, Scalar, to_fraction
from graded.verdict import verdict

logger = logging.getLogger(__name__)


class BracketTable:
    """Graded antisymmetric bilinear bracket stored on basis pairs i <= j"""

    def __init__(self, space: GradedSpace, table: Optional[Dict[Tuple[int, int], Element]] = None):
        self.space = space
        self.table: Dict[Tuple[int, int], Element] = {}
        for (i, j), value in (table or {}).items():
            if value.is_zero():
                continue
            expected = space.degrees[i] + space.degrees[j]
            if value.degree != expected:
                raise AlgebraError(
                    f"[{space.symbols[i]},{space.symbols[j]}] has degree {value.degree}, expected {expected}")
            if i > j:
                i, j, value = j, i, value * self._swap_sign(i, j)
            if i == j and space.degrees[i] % 2 == 0:
                raise AlgebraError(f"Even element {space.symbols[i]} cannot have a nonzero self-bracket")
            current = self.table.get((i, j))
            self.table[(i, j)] = value if current is None else current + value

    def _swap_sign(self, i: int, j: int) -> int:
        return 1 if (self.space.degrees[i] * self.space.degrees[j]) % 2 else -1

    @classmethod
    def from_symbols(cls, space: GradedSpace,
                     table: Dict[Tuple[str, str], Dict[str, Union[Scalar, str]]]) -> 'BracketTable':
        entries = {}
        for (a, b), value in table.items():
            entries[(space.index(a), space.index(b))] = space.element(
                {s: to_fraction(c) for s, c in value.items()})
        return cls(space, entries)

    def basis_bracket(self, i: int, j: int) -> Element:
        if i <= j:
            value = self.table.get((i, j))
            return value if value is not None else self.space.zero()
        value = self.table.get((j, i))
        if value is None:
            return self.space.zero()
        return value * self._swap_sign(j, i)

    def bracket(self, a: Element, b: Element) -> Element:
        terms: Dict[int, Fraction] = {}
        for i, c in a.terms.items():
            for j, d in b.terms.items():
                for k, e in self.basis_bracket(i, j).terms.items():
                    terms[k] = terms.get(k, 0) + c * d * e
        return Element(self.space, terms)

    def is_abelian(self) -> bool:
        return not self.table


class Dgla:
    """
    Finite-dimensional dgla given by a bracket table and a differential

    Args:
        space: underlying graded space (unshifted)
        bracket: graded antisymmetric bracket of degree 0
        differential: image of every basis vector under d (degree +1), missing means 0
    """

    def __init__(self, space: GradedSpace, bracket: Optional[BracketTable] = None,
                 differential: Optional[Dict[int, Element]] = None, name: Optional[str] = None):
        self.space = space
        self.name = name or space.name
        self.brackets = bracket or BracketTable(space)
        self.d: Dict[int, Element] = {}
        for j, value in (differential or {}).items():
            if value.is_zero():
                continue
            if value.degree != space.degrees[j] + 1:
                raise AlgebraError(f"d({space.symbols[j]}) must have degree {space.degrees[j] + 1}")
            self.d[j] = value
        self.represented: Optional[GradedSpace] = None

    def bracket(self, a: Element, b: Element) -> Element:
        return self.brackets.bracket(a, b)

    def differential(self, a: Element) -> Element:
        terms: Dict[int, Fraction] = {}
        for j, c in a.terms.items():
            for i, e in self.d.get(j, self.space.zero()).terms.items():
                terms[i] = terms.get(i, 0) + c * e
        return Element(self.space, terms)

    def basis(self) -> List[Element]:
        return [self.space.basis_element(i) for i in range(self.space.dim)]

    def identity_check(self) -> Dict:
        """Brute-force d^2 = 0, Leibniz and Jacobi on all basis tuples"""
        residuals = []
        space = self.space
        basis = self.basis()
        deg = space.degrees
        for i, x in enumerate(basis):
            value = self.differential(self.differential(x))
            if not value.is_zero():
                residuals.append({'relation': 'd^2', 'monomial': space.symbols[i], 'residual': value.to_text()})
        for i, j in itertools.product(range(space.dim), repeat=2):
            x, y = basis[i], basis[j]
            lhs = self.differential(self.bracket(x, y))
            rhs = self.bracket(self.differential(x), y) + self.bracket(x, self.differential(y)) * (-1) ** deg[i]
            if lhs != rhs:
                residuals.append({'relation': 'leibniz', 'monomial': f"{space.symbols[i]},{space.symbols[j]}",
                                  'residual': (lhs - rhs).to_text()})
        for i, j, k in itertools.product(range(space.dim), repeat=3):
            x, y, z = basis[i], basis[j], basis[k]
            lhs = self.bracket(x, self.bracket(y, z))
            rhs = (self.bracket(self.bracket(x, y), z)
                   + self.bracket(y, self.bracket(x, z)) * (-1) ** (deg[i] * deg[j]))
            if lhs != rhs:
                residuals.append({'relation': 'jacobi',
                                  'monomial': f"{space.symbols[i]},{space.symbols[j]},{space.symbols[k]}",
                                  'residual': (lhs - rhs).to_text()})
        return verdict('dgla_identities', residuals, ['d^2', 'leibniz', 'jacobi'])

    def to_linfty(self, cap: Optional[int] = None):
        from linfty.structure import dgla_structure
        return dgla_structure(self, cap)

    def __repr__(self) -> str:
        return f"Dgla({self.name}, dim {self.space.dim})"


def elementary_symbol(space: GradedSpace, i: int, j: int) -> str:
    return f"E[{space.symbols[i]},{space.symbols[j]}]"


def gl_space(V: GradedSpace) -> GradedSpace:
    """Elementary maps E[i,j]: v_j -> v_i of degree deg(v_i) - deg(v_j)"""
    basis = []
    for i in range(V.dim):
        for j in range(V.dim):
            basis.append((elementary_symbol(V, i, j), V.degrees[i] - V.degrees[j]))
    return GradedSpace(f"gl({V.name})", basis)


def gl_structure(V: GradedSpace, differential: Optional[Dict[int, Element]] = None) -> Dgla:
    """
    The dgla gl(V) with the graded commutator

    Args:
        V: represented space
        differential: optional differential of V; gl(V) then carries [d_V, -]
    """
    space = gl_space(V)
    n = V.dim
    index = lambda i, j: i * n + j
    degrees = space.degrees
    table = {}
    for (i, j), (k, l) in itertools.product(itertools.product(range(n), repeat=2), repeat=2):
        a, b = index(i, j), index(k, l)
        if a > b:
            continue
        terms: Dict[int, Fraction] = {}
        if j == k:
            terms[index(i, l)] = terms.get(index(i, l), 0) + 1
        if l == i:
            sign = -1 if (degrees[a] * degrees[b]) % 2 else 1
            terms[index(k, j)] = terms.get(index(k, j), 0) - sign
        value = Element(space, terms)
        if not value.is_zero():
            table[(a, b)] = value
    bracket = BracketTable(space, table)
    d_gl = {}
    if differential:
        d_matrix = Element(space, {})
        for j, value in differential.items():
            for i, c in value.terms.items():
                d_matrix = d_matrix + Element(space, {index(i, j): c})
        # [d_V, A] with |d_V| = 1
        for a in range(space.dim):
            image = bracket.bracket(d_matrix, space.basis_element(a))
            if not image.is_zero():
                d_gl[a] = image
    dgla = Dgla(space, bracket, d_gl, name=space.name)
    dgla.represented = V
    dgla.represented_differential = dict(differential or {})
    return dgla


def gl_element(V: GradedSpace, gl: GradedSpace, matrix) -> Element:
    """Element of gl(V) from a dim V x dim V matrix"""
    n = V.dim
    return Element(gl, {i * n + j: Fraction(matrix[i][j]) for i in range(n) for j in range(n)})


def gl_matrix(V: GradedSpace, element: Element) -> np.ndarray:
    n = V.dim
    result = np.array([[Fraction(0)] * n for _ in range(n)], dtype=object)
    for a, c in element.terms.items():
        result[a // n, a % n] = c
    return result


def structure_constants(dgla: Dgla) -> np.ndarray:
    """c[i, j, k] = coefficient of e_k in [e_i, e_j]"""
    n = dgla.space.dim
    c = np.array([[[Fraction(0)] * n for _ in range(n)] for _ in range(n)], dtype=object)
    for i in range(n):
        for j in range(n):
            for k, value in dgla.brackets.basis_bracket(i, j).terms.items():
                c[i, j, k] = value
    return c


def adjoint_matrices(dgla: Dgla) -> List[np.ndarray]:
    """ad(e_i) as matrices: column j is [e_i, e_j]"""
    c = structure_constants(dgla)
    n = dgla.space.dim
    return [np.array([[c[i, j, k] for j in range(n)] for k in range(n)], dtype=object) for i in range(n)]


def lie_algebra(name: str, symbols: Sequence[str], table: Dict[Tuple[str, str], Dict[str, Scalar]],
                degrees: Optional[Sequence[int]] = None) -> Dgla:
    """Convenience constructor for a graded Lie algebra with zero differential"""
    degrees = degrees or [0] * len(symbols)
    space = GradedSpace(name, list(zip(symbols, degrees)))
    return Dgla(space, BracketTable.from_symbols(space, table))
