"""
Graded Spaces and Elements
Finite-dimensional graded vector spaces over the rationals with sparse elements
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from graded.errors import AlgebraError, SpaceMismatchError
from graded.signs import normalize_monomial

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Exact rational from an int, a Fraction or a 'p/q' string"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise AlgebraError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise AlgebraError(f"Malformed rational '{value}': {e}")
    raise AlgebraError(f"Not an exact rational: {value!r}")


def format_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class GradedSpace:
    """Ordered basis of symbols with integer cohomological degrees"""

    def __init__(self, name: str, basis: Iterable[Tuple[str, int]],
                 blocks: Optional[Sequence[Tuple[str, int, int]]] = None):
        basis = [(str(symbol), degree) for symbol, degree in basis]
        symbols = [symbol for symbol, _ in basis]
        if len(set(symbols)) != len(symbols):
            duplicates = sorted({s for s in symbols if symbols.count(s) > 1})
            raise AlgebraError(f"Duplicate basis symbols in space {name}: {duplicates}")
        for symbol, degree in basis:
            if isinstance(degree, bool) or not isinstance(degree, int):
                raise AlgebraError(f"Degree of {symbol} in space {name} is not an integer: {degree!r}")
        self.name = name
        self.symbols: Tuple[str, ...] = tuple(symbols)
        self.degrees: Tuple[int, ...] = tuple(degree for _, degree in basis)
        self.blocks: Tuple[Tuple[str, int, int], ...] = tuple(blocks or ((name, 0, len(symbols)),))
        self._index = {symbol: i for i, symbol in enumerate(symbols)}
        self._normal_cache: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], int]] = {}
        self.parities: Tuple[int, ...] = tuple(d % 2 for d in self.degrees)

    @property
    def dim(self) -> int:
        return len(self.symbols)

    @property
    def basis(self) -> List[Tuple[str, int]]:
        return list(zip(self.symbols, self.degrees))

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def symbol(self, i: int) -> str:
        return self.symbols[i]

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlgebraError(f"Unknown symbol '{symbol}' in space {self.name}")

    def normalize(self, indices: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
        """Canonical monomial and Koszul sign of a word of basis indices (memoized)"""
        key = tuple(indices)
        cached = self._normal_cache.get(key)
        if cached is None:
            cached = normalize_monomial(key, self.degrees)
            self._normal_cache[key] = cached
        return cached

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def block(self, label: str) -> Tuple[int, int]:
        """(offset, size) of a named summand of a direct sum"""
        for name, offset, size in self.blocks:
            if name == label:
                return offset, size
        raise AlgebraError(f"Space {self.name} has no summand {label}")

    def block_of(self, i: int) -> str:
        for name, offset, size in self.blocks:
            if offset <= i < offset + size:
                return name
        raise AlgebraError(f"Index {i} outside space {self.name}")

    def shift(self, n: int) -> 'GradedSpace':
        """The space S[n]: same symbols, degrees lowered by n"""
        if n == 0:
            return self
        return GradedSpace(f"{self.name}[{n}]", [(s, d - n) for s, d in self.basis], self.blocks)

    def basis_element(self, key: Union[int, str]) -> 'Element':
        i = self.index(key) if isinstance(key, str) else key
        return Element(self, {i: Fraction(1)})

    def zero(self) -> 'Element':
        return Element(self, {})

    def element(self, coefficients: Dict[str, Scalar]) -> 'Element':
        return Element(self, {self.index(s): to_fraction(c) for s, c in coefficients.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedSpace) and self.symbols == other.symbols
                and self.degrees == other.degrees)

    def __hash__(self) -> int:
        return hash((self.symbols, self.degrees))

    def __repr__(self) -> str:
        return f"GradedSpace({self.name}, {self.basis})"


def shift_space(space: GradedSpace, n: int) -> GradedSpace:
    return space.shift(n)


def direct_sum(*spaces: GradedSpace, name: Optional[str] = None) -> GradedSpace:
    """Concatenate bases; each summand is recorded as a named block"""
    basis = []
    blocks = []
    offset = 0
    for space in spaces:
        basis.extend(space.basis)
        blocks.append((space.name, offset, space.dim))
        offset += space.dim
    return GradedSpace(name or "+".join(s.name for s in spaces), basis, blocks)


def dual_space(space: GradedSpace, shift: int = 0, suffix: str = "*",
               name: Optional[str] = None) -> GradedSpace:
    """Dual basis e_i* of degree -deg(e_i), optionally shifted by [shift]"""
    dual = GradedSpace(name or f"{space.name}*",
                       [(f"{s}{suffix}", -d) for s, d in space.basis])
    return dual.shift(shift)


class Element:
    """Sparse exact linear combination of basis vectors of one GradedSpace"""

    __slots__ = ('space', 'terms')

    def __init__(self, space: GradedSpace, terms: Dict[int, Scalar]):
        self.space = space
        self.terms: Dict[int, Fraction] = {}
        for i, c in terms.items():
            if c:
                if not 0 <= i < space.dim:
                    raise AlgebraError(f"Index {i} outside space {space.name}")
                self.terms[i] = Fraction(c)

    @property
    def degree(self) -> Optional[int]:
        """Common degree of all terms, or None for zero and inhomogeneous elements"""
        found = {self.space.degrees[i] for i in self.terms}
        return found.pop() if len(found) == 1 else None

    @property
    def is_homogeneous(self) -> bool:
        return len({self.space.degrees[i] for i in self.terms}) <= 1

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: Union[int, str]) -> Fraction:
        i = self.space.index(key) if isinstance(key, str) else key
        return self.terms.get(i, Fraction(0))

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self.terms.items()))

    def homogeneous_parts(self) -> Dict[int, 'Element']:
        parts: Dict[int, Dict[int, Fraction]] = {}
        for i, c in self.terms.items():
            parts.setdefault(self.space.degrees[i], {})[i] = c
        return {d: Element(self.space, t) for d, t in sorted(parts.items())}

    def shifted(self, n: int) -> 'Element':
        return Element(self.space.shift(n), self.terms)

    def restrict(self, label: str) -> Dict[int, Fraction]:
        """Coefficients in one summand of a direct sum, indexed within the summand"""
        offset, size = self.space.block(label)
        return {i - offset: c for i, c in self.terms.items() if offset <= i < offset + size}

    def _check(self, other: 'Element'):
        if not isinstance(other, Element) or other.space != self.space:
            raise SpaceMismatchError(
                f"Cannot combine elements of {self.space.name} and "
                f"{getattr(getattr(other, 'space', None), 'name', other)}")

    def __add__(self, other: 'Element') -> 'Element':
        self._check(other)
        terms = dict(self.terms)
        for i, c in other.terms.items():
            terms[i] = terms.get(i, 0) + c
        return Element(self.space, terms)

    def __sub__(self, other: 'Element') -> 'Element':
        return self + (-other)

    def __neg__(self) -> 'Element':
        return Element(self.space, {i: -c for i, c in self.terms.items()})

    def __mul__(self, scalar: Scalar) -> 'Element':
        scalar = Fraction(scalar)
        if not scalar:
            return Element(self.space, {})
        return Element(self.space, {i: c * scalar for i, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return isinstance(other, Element) and other.space == self.space and other.terms == self.terms

    def __hash__(self) -> int:
        return hash((self.space, tuple(sorted(self.terms.items()))))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, c in self.items():
            symbol = self.space.symbols[i]
            if c == 1:
                parts.append(symbol)
            elif c == -1:
                parts.append(f"-{symbol}")
            else:
                parts.append(f"{format_fraction(c)}*{symbol}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Element({self.space.name}: {self.to_text()})"


def shift_element(x: Element, n: int) -> Element:
    return x.shifted(n)


def sum_elements(space: GradedSpace, elements: Iterable[Element]) -> Element:
    terms: Dict[int, Fraction] = {}
    for element in elements:
        for i, c in element.terms.items():
            terms[i] = terms.get(i, 0) + c
    return Element(space, terms)
