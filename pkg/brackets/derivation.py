"""
Derivation Representatives
Families of multibrackets on a shifted space with the composition product and
the commutator bracket of the derivations they represent
"""

import logging
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from config.config import Config
from graded.errors import AlgebraError, ArityError, CapExceededError, SpaceMismatchError
from graded.signs import Monomial, cached_sign, unshuffles
from graded.space import Element, GradedSpace, Scalar
from brackets.multimap import MultiMap, expand_arguments

logger = logging.getLogger(__name__)


def default_cap() -> int:
    cap = Config.CAPS['max_arity']
    if cap > Config.CAPS['factorial_limit']:
        raise CapExceededError(f"Arity cap {cap} above factorial limit {Config.CAPS['factorial_limit']}")
    return cap


class DerivationRep:
    """
    Sparse family of multibrackets W^k -> W, k = 1..cap

    Entries map a normalized monomial of basis indices of W to the value on that
    tuple. The family may mix degrees; every term (monomial, output) has degree
    deg(output) - sum(deg(inputs)). Components above the cap are dropped: they
    form an ideal for the bracket, so all results are exact modulo that ideal.
    """

    __slots__ = ('space', 'cap', 'entries')

    def __init__(self, space: GradedSpace, entries: Optional[Dict[Sequence[int], Element]] = None,
                 cap: Optional[int] = None):
        self.space = space
        self.cap = default_cap() if cap is None else cap
        if self.cap > Config.CAPS['factorial_limit']:
            raise CapExceededError(f"Arity cap {self.cap} above factorial limit")
        self.entries: Dict[Monomial, Element] = {}
        dropped = 0
        for word, value in (entries or {}).items():
            if value.is_zero():
                continue
            if value.space != space:
                raise SpaceMismatchError(f"Entry value in {value.space.name}, expected {space.name}")
            if len(word) == 0:
                raise ArityError("Derivations without constant term have no arity-0 component")
            if len(word) > self.cap:
                dropped += 1
                continue
            monomial, sign = space.normalize(word)
            if not sign:
                continue
            current = self.entries.get(monomial)
            contribution = value if sign == 1 else -value
            total = contribution if current is None else current + contribution
            if total.is_zero():
                self.entries.pop(monomial, None)
            else:
                self.entries[monomial] = total
        if dropped:
            logger.debug(f"Truncated {dropped} entries above arity {self.cap} on {space.name}")

    @classmethod
    def zero(cls, space: GradedSpace, cap: Optional[int] = None) -> 'DerivationRep':
        return cls(space, {}, cap)

    @classmethod
    def from_components(cls, space: GradedSpace, components: Iterable[MultiMap],
                        cap: Optional[int] = None) -> 'DerivationRep':
        entries: Dict[Monomial, Element] = {}
        for component in components:
            if component.source != space or component.target != space:
                raise SpaceMismatchError(f"Component {component!r} does not act on {space.name}")
            for monomial, value in component.entries.items():
                current = entries.get(monomial)
                entries[monomial] = value if current is None else current + value
        return cls(space, entries, cap)

    @classmethod
    def from_terms(cls, space: GradedSpace, terms: Iterable[Tuple[Sequence[int], int, Scalar]],
                   cap: Optional[int] = None) -> 'DerivationRep':
        """Build from (input word, output index, coefficient) triples; words need not be normalized"""
        collected: Dict[Tuple[int, ...], Dict[int, Fraction]] = defaultdict(dict)
        for word, output, coefficient in terms:
            bucket = collected[tuple(word)]
            bucket[output] = bucket.get(output, 0) + Fraction(coefficient)
        return cls(space, {w: Element(space, t) for w, t in collected.items()}, cap)

    def terms(self) -> Iterator[Tuple[Monomial, int, Fraction]]:
        for monomial, value in sorted(self.entries.items()):
            for output, coefficient in value.items():
                yield monomial, output, coefficient

    def term_degree(self, monomial: Monomial, output: int) -> int:
        return self.space.degrees[output] - sum(self.space.degrees[i] for i in monomial)

    def degrees(self) -> Set[int]:
        return {self.term_degree(m, t) for m, value in self.entries.items() for t in value.terms}

    @property
    def degree(self) -> Optional[int]:
        """Common degree of all terms, None for zero or inhomogeneous families"""
        found = self.degrees()
        return found.pop() if len(found) == 1 else None

    def homogeneous_parts(self) -> Dict[int, 'DerivationRep']:
        parts: Dict[int, Dict[Monomial, Dict[int, Fraction]]] = defaultdict(lambda: defaultdict(dict))
        for monomial, output, coefficient in self.terms():
            parts[self.term_degree(monomial, output)][monomial][output] = coefficient
        return {
            degree: DerivationRep(self.space, {m: Element(self.space, t) for m, t in part.items()}, self.cap)
            for degree, part in sorted(parts.items())
        }

    def arities(self) -> List[int]:
        return sorted({len(m) for m in self.entries})

    def component(self, k: int) -> MultiMap:
        """Arity-k component as a MultiMap; needs a homogeneous family"""
        entries = {m: v for m, v in self.entries.items() if len(m) == k}
        degree = self.degree
        if degree is None:
            found = {self.term_degree(m, t) for m, v in entries.items() for t in v.terms}
            if len(found) > 1:
                raise AlgebraError(f"Arity-{k} component mixes degrees {sorted(found)}")
            degree = found.pop() if found else 0
        return MultiMap(self.space, self.space, k, degree, entries, validate=False)

    def components(self) -> Dict[int, MultiMap]:
        return {k: self.component(k) for k in self.arities()}

    def value(self, indices: Sequence[int]) -> Element:
        if not indices:
            return self.space.zero()
        monomial, sign = self.space.normalize(indices)
        entry = self.entries.get(monomial) if sign else None
        if entry is None:
            return self.space.zero()
        return entry if sign == 1 else -entry

    def evaluate(self, args: Sequence[Element]) -> Element:
        """Arity-len(args) component on the given arguments"""
        terms: Dict[int, Fraction] = {}
        for monomial, coefficient in expand_arguments(self.space, args).items():
            entry = self.entries.get(monomial)
            if entry is None:
                continue
            for i, c in entry.terms.items():
                terms[i] = terms.get(i, 0) + coefficient * c
        return Element(self.space, terms)

    def filter_terms(self, keep: Callable[[Monomial, int], bool]) -> 'DerivationRep':
        """Sub-family of the terms (input monomial, output index) accepted by keep"""
        entries = {}
        for monomial, value in self.entries.items():
            kept = {t: c for t, c in value.terms.items() if keep(monomial, t)}
            if kept:
                entries[monomial] = Element(self.space, kept)
        return DerivationRep(self.space, entries, self.cap)

    def truncated(self, cap: int) -> 'DerivationRep':
        return DerivationRep(self.space, {m: v for m, v in self.entries.items() if len(m) <= cap}, cap)

    def is_zero(self) -> bool:
        return not self.entries

    def _check(self, other: 'DerivationRep'):
        if not isinstance(other, DerivationRep) or other.space != self.space:
            raise SpaceMismatchError("Derivations on different spaces cannot be combined")

    def __add__(self, other: 'DerivationRep') -> 'DerivationRep':
        self._check(other)
        entries = dict(self.entries)
        for monomial, value in other.entries.items():
            current = entries.get(monomial)
            entries[monomial] = value if current is None else current + value
        return DerivationRep(self.space, entries, min(self.cap, other.cap))

    def __sub__(self, other: 'DerivationRep') -> 'DerivationRep':
        return self + (-other)

    def __neg__(self) -> 'DerivationRep':
        return DerivationRep(self.space, {m: -v for m, v in self.entries.items()}, self.cap)

    def __mul__(self, scalar: Scalar) -> 'DerivationRep':
        return DerivationRep(self.space, {m: v * scalar for m, v in self.entries.items()}, self.cap)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return isinstance(other, DerivationRep) and other.space == self.space and other.entries == self.entries

    def __hash__(self) -> int:
        return hash((self.space, tuple(sorted((m, v) for m, v in self.entries.items()))))

    def compose(self, other: 'DerivationRep', cap: Optional[int] = None) -> 'DerivationRep':
        return compose(self, other, cap)

    def bracket(self, other: 'DerivationRep', cap: Optional[int] = None) -> 'DerivationRep':
        return derivation_bracket(self, other, cap)

    def to_text(self) -> str:
        if not self.entries:
            return "0"
        lines = []
        for monomial, value in sorted(self.entries.items()):
            inputs = "*".join(self.space.symbols[i] for i in monomial)
            lines.append(f"{inputs} -> {value.to_text()}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"DerivationRep({self.space.name}, cap {self.cap}, {len(self.entries)} entries)"


def _composite_value(first: DerivationRep, second: DerivationRep, monomial: Monomial,
                     first_arities: Set[int], second_arities: Set[int]) -> Dict[int, Fraction]:
    """(first o second) on one basis tuple, summed over all unshuffles"""
    space = first.space
    n = len(monomial)
    parities = tuple(space.parities[i] for i in monomial)
    terms: Dict[int, Fraction] = {}
    for l in range(1, n + 1):
        if l not in second_arities or (n - l + 1) not in first_arities:
            continue
        for sigma in unshuffles(l, n):
            inner = second.value(tuple(monomial[p] for p in sigma[:l]))
            if inner.is_zero():
                continue
            sign = cached_sign(sigma, parities)
            rest = tuple(monomial[p] for p in sigma[l:])
            for t, c in inner.terms.items():
                outer = first.value((t,) + rest)
                if outer.is_zero():
                    continue
                factor = sign * c
                for i, d in outer.terms.items():
                    terms[i] = terms.get(i, 0) + factor * d
    return {i: c for i, c in terms.items() if c}


def compose(first: DerivationRep, second: DerivationRep, cap: Optional[int] = None) -> DerivationRep:
    """
    Composition product of two multibracket families

    (first o second)_n(x_1..x_n) = sum over l and (l, n-l)-unshuffles s of
    eps(s) first_{n-l+1}(second_l(x_s(1)..x_s(l)), x_s(l+1)..x_s(n)).
    Only monomials that can receive a nonzero term are evaluated.
    """
    first._check(second)
    space = first.space
    cap = min(first.cap, second.cap) if cap is None else cap
    containing: Dict[int, Set[Monomial]] = defaultdict(set)
    for mu in first.entries:
        for t in set(mu):
            containing[t].add(mu)
    candidates: Set[Monomial] = set()
    for mu2, value in second.entries.items():
        for t in value.terms:
            for mu1 in containing.get(t, ()):
                rest = list(mu1)
                rest.remove(t)
                word = mu2 + tuple(rest)
                if len(word) > cap:
                    continue
                monomial, sign = space.normalize(word)
                if sign:
                    candidates.add(monomial)
    first_arities = set(first.arities())
    second_arities = set(second.arities())
    entries = {}
    for monomial in sorted(candidates):
        terms = _composite_value(first, second, monomial, first_arities, second_arities)
        if terms:
            entries[monomial] = Element(space, terms)
    return DerivationRep(space, entries, cap)


def derivation_bracket(first: DerivationRep, second: DerivationRep,
                       cap: Optional[int] = None) -> DerivationRep:
    """Graded commutator [a, b] = a o b - (-1)^(|a||b|) b o a, taken on homogeneous parts"""
    first._check(second)
    cap = min(first.cap, second.cap) if cap is None else cap
    result = DerivationRep.zero(first.space, cap)
    for da, part_a in first.homogeneous_parts().items():
        for db, part_b in second.homogeneous_parts().items():
            forward = compose(part_a, part_b, cap)
            backward = compose(part_b, part_a, cap)
            if (da * db) % 2:
                result = result + forward + backward
            else:
                result = result + forward - backward
    return result


def linear_derivation(space: GradedSpace, matrix: Dict[int, Dict[int, Scalar]],
                      cap: Optional[int] = None) -> DerivationRep:
    """Arity-1 family from column data: matrix[j] is the image of basis vector j"""
    entries = {(j,): Element(space, {i: Fraction(c) for i, c in column.items()})
               for j, column in matrix.items()}
    return DerivationRep(space, entries, cap)
