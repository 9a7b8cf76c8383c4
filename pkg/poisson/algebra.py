"""
Shifted Poisson Algebra
Weight-truncated polynomials on g*[-1] + g[1-n] with the degree -n pairing bracket,
and the double of derivations of S(g[1])
"""

import logging
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple

from config.config import Config
from graded.errors import AlgebraError, CapExceededError, SpaceMismatchError, WeightOverflowError
from graded.signs import Monomial, monomial_multiplicity
from graded.space import GradedSpace, Scalar, format_fraction
from brackets.derivation import DerivationRep

logger = logging.getLogger(__name__)


class PoissonAlgebra:
    """
    Generators xi_a of g*[-1] (degree -w_a) followed by v_a of g[1-n] (degree w_a + n),
    where w_a is the degree of e_a in g[1]; polynomials are kept up to total weight W

    The bracket has degree -n, so the Lie degree of a monomial is its polynomial
    degree minus n.
    """

    def __init__(self, g: GradedSpace, n: Optional[int] = None, weight_cap: Optional[int] = None,
                 pairing_sign: Optional[int] = None):
        self.g = g
        self.n = n if n is not None else Config.POISSON['default_shift']
        self.weight_cap = weight_cap if weight_cap is not None else Config.CAPS['max_weight']
        if self.weight_cap < 2:
            raise CapExceededError(f"Weight cap {self.weight_cap} below 2")
        self.pairing_sign = pairing_sign if pairing_sign is not None else Config.POISSON['pairing_sign']
        if self.pairing_sign not in (1, -1):
            raise AlgebraError(f"Pairing sign must be +1 or -1, got {self.pairing_sign}")
        self.dim = g.dim
        self.g_shifted = g.shift(1)
        self.shifted_degrees = tuple(self.g_shifted.degrees)
        basis = [(f"{s}*", -w) for s, w in zip(g.symbols, self.shifted_degrees)]
        basis += [(s, w + self.n) for s, w in zip(g.symbols, self.shifted_degrees)]
        self.space = GradedSpace(f"S({g.name}*[-1]+{g.name}[{1 - self.n}])", basis,
                                 blocks=[('xi', 0, self.dim), ('v', self.dim, self.dim)])
        # {v_a, xi_a} = omega_a {xi_a, v_a}
        self.omega = tuple(-1 if (w * (1 + self.n)) % 2 == 0 else 1 for w in self.shifted_degrees)

    def xi(self, a: int) -> int:
        return a

    def v(self, a: int) -> int:
        return self.dim + a

    def partner(self, i: int) -> int:
        return i + self.dim if i < self.dim else i - self.dim

    def bi_weight(self, monomial: Monomial) -> Tuple[int, int]:
        """(number of xi factors, number of v factors)"""
        p = sum(1 for i in monomial if i < self.dim)
        return p, len(monomial) - p

    def lie_degree(self, monomial: Monomial) -> int:
        return sum(self.space.degrees[i] for i in monomial) - self.n

    def zero(self) -> 'PoissonPoly':
        return PoissonPoly(self, {})

    def generator(self, i: int) -> 'PoissonPoly':
        return PoissonPoly(self, {(i,): 1})

    def monomial(self, word: Sequence[int], coefficient: Scalar = 1) -> 'PoissonPoly':
        return PoissonPoly(self, {tuple(word): coefficient})

    def contravariant(self, terms: Dict[Sequence[int], Scalar]) -> 'PoissonPoly':
        """Polynomial in the v generators from words of basis indices of g"""
        return PoissonPoly(self, {tuple(self.v(a) for a in word): c for word, c in terms.items()})

    def from_symbols(self, terms: Dict[Sequence[str], Scalar]) -> 'PoissonPoly':
        return PoissonPoly(self, {tuple(self.space.index(s) for s in word): c for word, c in terms.items()})

    def monomial_text(self, monomial: Monomial) -> str:
        return " ".join(self.space.symbols[i] for i in monomial) if monomial else "1"

    def __eq__(self, other) -> bool:
        return (isinstance(other, PoissonAlgebra) and other.space == self.space and other.n == self.n
                and other.weight_cap == self.weight_cap and other.pairing_sign == self.pairing_sign)

    def __hash__(self) -> int:
        return hash((self.space, self.n, self.weight_cap, self.pairing_sign))

    def __repr__(self) -> str:
        return f"PoissonAlgebra({self.g.name}, n={self.n}, W={self.weight_cap})"


class PoissonPoly:
    """
    Sparse polynomial in the generators of a PoissonAlgebra

    Terms are normalized monomials with exact coefficients. A term above the
    weight cap raises WeightOverflowError unless truncate is set.
    """

    __slots__ = ('algebra', 'terms')

    def __init__(self, algebra: PoissonAlgebra, terms: Optional[Dict[Sequence[int], Scalar]] = None,
                 truncate: bool = False, weight_cap: Optional[int] = None):
        self.algebra = algebra
        cap = weight_cap if weight_cap is not None else algebra.weight_cap
        collected: Dict[Monomial, Fraction] = defaultdict(Fraction)
        dropped = 0
        for word, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            monomial, sign = algebra.space.normalize(word)
            if not sign:
                continue
            if len(monomial) > cap:
                if truncate:
                    dropped += 1
                    continue
                text = algebra.monomial_text(monomial)
                raise WeightOverflowError(f"Term {text} has weight {len(monomial)} above cap {cap}", term=text)
            collected[monomial] += sign * c
        self.terms: Dict[Monomial, Fraction] = {m: c for m, c in collected.items() if c}
        if dropped:
            logger.debug(f"Dropped {dropped} terms above weight {cap}")

    @property
    def degree(self) -> Optional[int]:
        """Common Lie degree of all terms, None for zero or inhomogeneous polynomials"""
        found = {self.algebra.lie_degree(m) for m in self.terms}
        return found.pop() if len(found) == 1 else None

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def bi_weights(self):
        return sorted({self.algebra.bi_weight(m) for m in self.terms})

    def max_weight(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def filter_terms(self, keep: Callable[[Monomial], bool]) -> 'PoissonPoly':
        return self._like({m: c for m, c in self.terms.items() if keep(m)})

    def part(self, p: Optional[int] = None, q: Optional[int] = None) -> 'PoissonPoly':
        """Terms of the given bi-weight; None matches any count"""
        def keep(monomial: Monomial) -> bool:
            tp, tq = self.algebra.bi_weight(monomial)
            return (p is None or tp == p) and (q is None or tq == q)
        return self.filter_terms(keep)

    def homogeneous_parts(self) -> Dict[int, 'PoissonPoly']:
        parts: Dict[int, Dict[Monomial, Fraction]] = defaultdict(dict)
        for m, c in self.terms.items():
            parts[self.algebra.lie_degree(m)][m] = c
        return {d: self._like(t) for d, t in sorted(parts.items())}

    def in_s_prime(self) -> bool:
        """Every term has at least one xi and at least one v"""
        return all(min(self.algebra.bi_weight(m)) >= 1 for m in self.terms)

    def in_contravariant(self, min_q: int = 2) -> bool:
        """Every term is a product of at least min_q v generators and no xi"""
        return all(self.algebra.bi_weight(m)[0] == 0 and len(m) >= min_q for m in self.terms)

    def rehome(self, algebra: PoissonAlgebra) -> 'PoissonPoly':
        """The same polynomial in another weight truncation of the same generators"""
        if algebra.space != self.algebra.space or algebra.n != self.algebra.n:
            raise SpaceMismatchError(f"Cannot move a polynomial of {self.algebra!r} into {algebra!r}")
        return PoissonPoly(algebra, self.terms)

    def _like(self, terms: Dict[Monomial, Fraction], *others: 'PoissonPoly') -> 'PoissonPoly':
        """Arithmetic result; keeps every term the operands already carry"""
        cap = max([self.algebra.weight_cap, self.max_weight()] + [o.max_weight() for o in others])
        return PoissonPoly(self.algebra, terms, weight_cap=cap)

    def _check(self, other: 'PoissonPoly'):
        if not isinstance(other, PoissonPoly) or other.algebra.space != self.algebra.space:
            raise SpaceMismatchError("Polynomials of different Poisson algebras cannot be combined")

    def __add__(self, other: 'PoissonPoly') -> 'PoissonPoly':
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return self._like(terms, other)

    def __sub__(self, other: 'PoissonPoly') -> 'PoissonPoly':
        return self + (-other)

    def __neg__(self) -> 'PoissonPoly':
        return self._like({m: -c for m, c in self.terms.items()})

    def __mul__(self, scalar: Scalar) -> 'PoissonPoly':
        scalar = Fraction(scalar)
        return self._like({m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return (isinstance(other, PoissonPoly) and other.algebra.space == self.algebra.space
                and other.terms == self.terms)

    def __hash__(self) -> int:
        return hash((self.algebra.space, tuple(sorted(self.terms.items()))))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for monomial, c in self.items():
            text = self.algebra.monomial_text(monomial)
            if c == 1:
                parts.append(text)
            elif c == -1:
                parts.append(f"-{text}")
            else:
                parts.append(f"{format_fraction(c)} {text}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"PoissonPoly({self.to_text()})"


def right_derivative(space: GradedSpace, monomial: Monomial, i: int) -> Optional[Tuple[int, Monomial]]:
    """f <- d/dz_i on one monomial: (factor, remaining monomial) or None"""
    count = monomial.count(i)
    if not count:
        return None
    position = monomial.index(i) + count - 1
    rest = monomial[:position] + monomial[position + 1:]
    if space.parities[i] and sum(space.parities[k] for k in monomial[position + 1:]) % 2:
        return -count, rest
    return count, rest


def left_derivative(space: GradedSpace, monomial: Monomial, i: int) -> Optional[Tuple[int, Monomial]]:
    """d/dz_i -> f on one monomial"""
    count = monomial.count(i)
    if not count:
        return None
    position = monomial.index(i)
    rest = monomial[:position] + monomial[position + 1:]
    if space.parities[i] and sum(space.parities[k] for k in monomial[:position]) % 2:
        return -count, rest
    return count, rest


def poisson_bracket(a: PoissonPoly, b: PoissonPoly, truncate: bool = False,
                    weight_cap: Optional[int] = None) -> PoissonPoly:
    """
    {a, b} = sum_a (a <- d/dxi_a)(d/dv_a -> b) + omega_a (a <- d/dv_a)(d/dxi_a -> b),
    scaled by the pairing sign

    Raises:
        WeightOverflowError: a result term lies above the weight cap and truncate is off
    """
    a._check(b)
    algebra = a.algebra
    space = algebra.space
    terms: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for m1, c1 in a.terms.items():
        for x in set(m1):
            y = algebra.partner(x)
            factor = algebra.pairing_sign if x < algebra.dim else algebra.pairing_sign * algebra.omega[x - algebra.dim]
            s1, rest1 = right_derivative(space, m1, x)
            for m2, c2 in b.terms.items():
                found = left_derivative(space, m2, y)
                if found is None:
                    continue
                s2, rest2 = found
                monomial, sign = space.normalize(rest1 + rest2)
                if sign:
                    terms[monomial] += factor * sign * s1 * s2 * c1 * c2
    return PoissonPoly(algebra, terms, truncate=truncate, weight_cap=weight_cap)


def poisson_algebra_for(space: GradedSpace, n: Optional[int] = None, cap: Optional[int] = None,
                        weight_cap: Optional[int] = None) -> PoissonAlgebra:
    """
    Poisson algebra large enough to hold the double of arity-cap derivations

    Raises:
        CapExceededError: the weight cap is below cap + 1
    """
    cap = cap if cap is not None else Config.CAPS['max_arity']
    weight_cap = weight_cap if weight_cap is not None else max(Config.CAPS['max_weight'], cap + 1)
    if weight_cap < cap + 1:
        raise CapExceededError(f"Weight cap {weight_cap} cannot hold arity-{cap} components (needs {cap + 1})")
    return PoissonAlgebra(space, n, weight_cap)


def double(source, algebra: Optional[PoissonAlgebra] = None, n: Optional[int] = None) -> PoissonPoly:
    """
    D_n: the term (x_a1 ... x_ak -> c e_j) of a derivation of S(g[1]) goes to
    c / mu! * v_j xi_ak ... xi_a1, mu! the symmetry factor of the input monomial

    Args:
        source: DerivationRep on g[1] or an LInftyStructure on g
        algebra: target Poisson algebra (built from the source space and n when omitted)
    """
    rep = getattr(source, 'brackets', source)
    if algebra is None:
        algebra = poisson_algebra_for(rep.space.shift(-1), n, rep.cap)
    if rep.space != algebra.g_shifted:
        raise SpaceMismatchError(f"Derivation acts on {rep.space.name}, expected {algebra.g_shifted.name}")
    terms: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
    for monomial, output, c in rep.terms():
        word = (algebra.v(output),) + tuple(algebra.xi(a) for a in reversed(monomial))
        terms[word] += c * algebra.pairing_sign / monomial_multiplicity(monomial)
    return PoissonPoly(algebra, terms)


def undouble(poly: PoissonPoly, cap: Optional[int] = None) -> DerivationRep:
    """Inverse of double on the terms with exactly one v and at least one xi"""
    algebra = poly.algebra
    cap = cap if cap is not None else algebra.weight_cap - 1
    terms = []
    for monomial, c in poly.terms.items():
        p, q = algebra.bi_weight(monomial)
        if q != 1 or p == 0:
            continue
        j = monomial[-1] - algebra.dim
        inputs = monomial[:-1]
        _, sign = algebra.space.normalize((monomial[-1],) + tuple(reversed(inputs)))
        terms.append((inputs, j, c * sign * monomial_multiplicity(inputs) * algebra.pairing_sign))
    return DerivationRep.from_terms(algebra.g_shifted, terms, cap)
