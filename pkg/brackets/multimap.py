"""
Multilinear Maps
Graded symmetric maps S^k(source) -> target stored on normalized monomials
"""

import itertools
import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from graded.errors import AlgebraError, ArityError, SpaceMismatchError
from graded.signs import Monomial, basis_monomials
from graded.space import Element, GradedSpace, Scalar

logger = logging.getLogger(__name__)


def expand_arguments(source: GradedSpace, args: Sequence[Element]) -> Dict[Monomial, Fraction]:
    """
    Multilinear expansion of an argument tuple into normalized basis monomials

    Args:
        source: space every argument must live in
        args: argument elements

    Returns:
        Coefficient of every normalized monomial, Koszul signs included
    """
    for arg in args:
        if arg.space != source:
            raise SpaceMismatchError(f"Argument in {arg.space.name}, expected {source.name}")
    expansion: Dict[Monomial, Fraction] = {}
    for combo in itertools.product(*(list(arg.terms.items()) for arg in args)):
        indices = tuple(i for i, _ in combo)
        monomial, sign = source.normalize(indices)
        if not sign:
            continue
        coefficient = Fraction(sign)
        for _, c in combo:
            coefficient *= c
        expansion[monomial] = expansion.get(monomial, 0) + coefficient
    return {m: c for m, c in expansion.items() if c}


class MultiMap:
    """Graded symmetric multilinear map of fixed arity and degree"""

    def __init__(self, source: GradedSpace, target: GradedSpace, arity: int, degree: int,
                 entries: Optional[Dict[Monomial, Element]] = None, validate: bool = True):
        if arity < 1:
            raise ArityError(f"Multilinear maps need arity >= 1, got {arity}")
        self.source = source
        self.target = target
        self.arity = arity
        self.degree = degree
        self.entries: Dict[Monomial, Element] = {}
        for monomial, value in (entries or {}).items():
            if value.is_zero():
                continue
            if validate:
                self._validate(monomial, value)
            self.entries[tuple(monomial)] = value

    def _validate(self, monomial: Monomial, value: Element):
        if len(monomial) != self.arity:
            raise ArityError(f"Entry {monomial} has length {len(monomial)}, arity is {self.arity}")
        normal, sign = self.source.normalize(monomial)
        if normal != tuple(monomial) or sign != 1:
            raise AlgebraError(f"Entry {monomial} is not a normalized monomial of {self.source.name}")
        if value.space != self.target:
            raise SpaceMismatchError(f"Entry value in {value.space.name}, expected {self.target.name}")
        expected = sum(self.source.degrees[i] for i in monomial) + self.degree
        if value.degree != expected:
            raise AlgebraError(
                f"Entry on {self.monomial_text(monomial)} has degree {value.degree}, expected {expected}")

    def monomial_text(self, monomial: Monomial) -> str:
        return "*".join(self.source.symbols[i] for i in monomial)

    def value(self, indices: Sequence[int]) -> Element:
        """Value on a tuple of basis vectors given in any order"""
        monomial, sign = self.source.normalize(indices)
        entry = self.entries.get(monomial) if sign else None
        if entry is None:
            return self.target.zero()
        return entry if sign == 1 else -entry

    def evaluate(self, args: Sequence[Element]) -> Element:
        if len(args) != self.arity:
            raise ArityError(f"Map of arity {self.arity} evaluated on {len(args)} arguments")
        terms: Dict[int, Fraction] = {}
        for monomial, coefficient in expand_arguments(self.source, args).items():
            entry = self.entries.get(monomial)
            if entry is None:
                continue
            for i, c in entry.terms.items():
                terms[i] = terms.get(i, 0) + coefficient * c
        return Element(self.target, terms)

    def is_zero(self) -> bool:
        return not self.entries

    def _combine(self, other: 'MultiMap', factor: int) -> 'MultiMap':
        if (other.source, other.target, other.arity) != (self.source, self.target, self.arity):
            raise SpaceMismatchError("Multilinear maps of different shape cannot be added")
        if other.degree != self.degree and self.entries and other.entries:
            raise AlgebraError(f"Cannot add maps of degree {self.degree} and {other.degree}")
        entries = dict(self.entries)
        for monomial, value in other.entries.items():
            current = entries.get(monomial)
            entries[monomial] = value * factor if current is None else current + value * factor
        degree = self.degree if self.entries else other.degree
        return MultiMap(self.source, self.target, self.arity, degree, entries, validate=False)

    def __add__(self, other: 'MultiMap') -> 'MultiMap':
        return self._combine(other, 1)

    def __sub__(self, other: 'MultiMap') -> 'MultiMap':
        return self._combine(other, -1)

    def __mul__(self, scalar: Scalar) -> 'MultiMap':
        return MultiMap(self.source, self.target, self.arity, self.degree,
                        {m: v * scalar for m, v in self.entries.items()}, validate=False)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiMap) and other.source == self.source
                and other.target == self.target and other.arity == self.arity
                and other.entries == self.entries)

    @classmethod
    def from_function(cls, source: GradedSpace, target: GradedSpace, arity: int, degree: int,
                      function: Callable[[Monomial], Element]) -> 'MultiMap':
        """Tabulate a map by calling function on every normalized basis monomial"""
        entries = {}
        for monomial in basis_monomials(source.degrees, arity):
            value = function(monomial)
            if not value.is_zero():
                entries[monomial] = value
        return cls(source, target, arity, degree, entries)

    @classmethod
    def from_matrix(cls, source: GradedSpace, target: GradedSpace, matrix, degree: int) -> 'MultiMap':
        """Arity-1 map whose column j is the image of basis vector j"""
        rows, cols = len(matrix), len(matrix[0]) if len(matrix) else 0
        if rows != target.dim or cols != source.dim:
            raise AlgebraError(f"Matrix of shape {rows}x{cols} does not fit {source.name} -> {target.name}")
        entries = {}
        for j in range(source.dim):
            entries[(j,)] = Element(target, {i: Fraction(matrix[i][j]) for i in range(target.dim)})
        return cls(source, target, 1, degree, entries)

    def matrix(self) -> np.ndarray:
        """Fraction-valued matrix of an arity-1 map"""
        if self.arity != 1:
            raise ArityError("Only arity-1 maps have a matrix")
        result = np.array([[Fraction(0)] * self.source.dim for _ in range(self.target.dim)], dtype=object)
        for (j,), value in self.entries.items():
            for i, c in value.terms.items():
                result[i, j] = c
        return result

    def restrict_to(self, indices: Iterable[int]) -> 'MultiMap':
        """Keep only entries whose factors all lie in the given source indices"""
        allowed = set(indices)
        return MultiMap(self.source, self.target, self.arity, self.degree,
                        {m: v for m, v in self.entries.items() if set(m) <= allowed}, validate=False)

    def compose_linear(self, linear: 'MultiMap') -> 'MultiMap':
        """linear o self for an arity-1 map defined on the target of self"""
        if linear.arity != 1 or linear.source != self.target:
            raise SpaceMismatchError(f"Cannot post-compose with a map on {linear.source.name}")
        entries = {m: linear.evaluate([v]) for m, v in self.entries.items()}
        return MultiMap(self.source, linear.target, self.arity, self.degree + linear.degree, entries,
                        validate=False)

    def items(self) -> Iterable[Tuple[Monomial, Element]]:
        return iter(sorted(self.entries.items()))

    def __repr__(self) -> str:
        return (f"MultiMap({self.source.name}^{self.arity} -> {self.target.name}, "
                f"degree {self.degree}, {len(self.entries)} entries)")
