"""
Koszul Signs and Unshuffles
Sign rules for permuting graded symmetric factors and the canonical form of monomials
"""

import itertools
import logging
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from graded.errors import PermutationError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def _zero_based(permutation: Sequence[int]) -> Tuple[int, ...]:
    """Accept a permutation of 0..n-1 or of 1..n and return the 0-based form"""
    n = len(permutation)
    values = sorted(permutation)
    if values == list(range(n)):
        return tuple(permutation)
    if values == list(range(1, n + 1)):
        return tuple(p - 1 for p in permutation)
    raise PermutationError(f"Not a bijection on {n} letters: {list(permutation)}")


def koszul_sign(permutation: Sequence[int], degrees: Sequence[int]) -> int:
    """
    Koszul sign of reordering x_1...x_n into x_s(1)...x_s(n)

    Args:
        permutation: s as a sequence, either 0-based or 1-based
        degrees: degrees of x_1..x_n in their original order

    Returns:
        +1 or -1, the product of (-1)^(|a||b|) over every pair that swaps order
    """
    if len(permutation) != len(degrees):
        raise PermutationError(
            f"Permutation of length {len(permutation)} does not match {len(degrees)} degrees")
    sigma = _zero_based(permutation)
    parity = 0
    n = len(sigma)
    for p in range(n):
        dp = degrees[sigma[p]]
        if dp % 2 == 0:
            continue
        for q in range(p + 1, n):
            if sigma[p] > sigma[q] and degrees[sigma[q]] % 2:
                parity ^= 1
    return -1 if parity else 1


def normalize_monomial(indices: Sequence[int], degrees: Sequence[int]) -> Tuple[Monomial, int]:
    """
    Sort a word of basis indices into canonical order

    Args:
        indices: basis indices of the factors, in written order
        degrees: degree of every basis index of the ambient space

    Returns:
        (sorted monomial, sign) with sign 0 when an odd factor repeats
    """
    order = sorted(range(len(indices)), key=lambda p: indices[p])
    monomial = tuple(indices[p] for p in order)
    for a, b in zip(monomial, monomial[1:]):
        if a == b and degrees[a] % 2:
            return monomial, 0
    return monomial, koszul_sign(order, [degrees[i] for i in indices])


@lru_cache(maxsize=None)
def _unshuffles(i: int, n: int) -> Tuple[Tuple[int, ...], ...]:
    result = []
    for head in itertools.combinations(range(n), i):
        chosen = set(head)
        tail = tuple(p for p in range(n) if p not in chosen)
        result.append(head + tail)
    return tuple(result)


def unshuffles(i: int, n: int) -> Iterator[Tuple[int, ...]]:
    """Yield the (i, n-i)-unshuffles as 0-based permutations, increasing on both blocks"""
    if not 0 <= i <= n:
        raise PermutationError(f"Unshuffle block {i} outside 0..{n}")
    return iter(_unshuffles(i, n))


@lru_cache(maxsize=None)
def _multi_unshuffles(sizes: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    n = sum(sizes)
    result = []

    def build(remaining: Tuple[int, ...], block: int, prefix: Tuple[int, ...]):
        if block == len(sizes):
            result.append(prefix)
            return
        for head in itertools.combinations(remaining, sizes[block]):
            chosen = set(head)
            rest = tuple(p for p in remaining if p not in chosen)
            build(rest, block + 1, prefix + head)

    build(tuple(range(n)), 0, ())
    return tuple(result)


def multi_unshuffles(sizes: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Yield permutations increasing on each consecutive block of the given sizes"""
    if any(k < 0 for k in sizes):
        raise PermutationError(f"Negative block size in {list(sizes)}")
    return iter(_multi_unshuffles(tuple(sizes)))


def compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered compositions of n into the given number of positive parts"""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for cut in itertools.combinations(range(1, n), parts - 1):
        bounds = (0,) + cut + (n,)
        yield tuple(bounds[k + 1] - bounds[k] for k in range(parts))


def basis_monomials(degrees: Sequence[int], k: int) -> List[Monomial]:
    """All normalized monomials of length k, odd repetitions excluded"""
    result = []
    for word in itertools.combinations_with_replacement(range(len(degrees)), k):
        if any(a == b and degrees[a] % 2 for a, b in zip(word, word[1:])):
            continue
        result.append(word)
    return result


def monomial_multiplicity(monomial: Monomial) -> int:
    """Product of factorials of the repetition counts (the symmetry factor of an even power)"""
    factor = 1
    for _, group in itertools.groupby(monomial):
        count = len(list(group))
        for j in range(2, count + 1):
            factor *= j
    return factor


@lru_cache(maxsize=200000)
def cached_sign(permutation: Tuple[int, ...], parities: Tuple[int, ...]) -> int:
    """koszul_sign for 0-based permutations and degree parities, memoized"""
    return koszul_sign(permutation, parities)
