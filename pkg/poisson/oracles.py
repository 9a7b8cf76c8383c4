"""
Classical bracket oracles on multivectors and symmetric polynomials

Independent expansions from structure constants, used to cross-check the
derived brackets of the Poisson algebra.
"""

import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Tuple

import numpy as np

from graded.signs import koszul_sign
from poisson.algebra import PoissonPoly

Multivector = Dict[Tuple[int, ...], Fraction]


def _wedge(word: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
    if len(set(word)) != len(word):
        return word, 0
    order = sorted(range(len(word)), key=lambda p: word[p])
    return tuple(word[p] for p in order), koszul_sign(order, [1] * len(word))


def classical_schouten(constants: np.ndarray, a: Multivector, b: Multivector) -> Multivector:
    """
    Schouten bracket on the exterior algebra of an ordinary Lie algebra:
    [x_1..x_k, y_1..y_l] = sum (-1)^(i+j) [x_i, y_j] x_1..^i..x_k y_1..^j..y_l
    """
    result: Multivector = defaultdict(Fraction)
    dim = constants.shape[0]
    for xs, ca in a.items():
        for ys, cb in b.items():
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    sign = -1 if (i + j) % 2 else 1
                    rest = xs[:i] + xs[i + 1:] + ys[:j] + ys[j + 1:]
                    for c in range(dim):
                        k = constants[x, y, c]
                        if not k:
                            continue
                        word, s = _wedge((c,) + rest)
                        if s:
                            result[word] += sign * s * k * ca * cb
    return {w: c for w, c in result.items() if c}


def _derivative(monomial: Tuple[int, ...], i: int):
    count = monomial.count(i)
    if not count:
        return None
    position = monomial.index(i)
    return count, monomial[:position] + monomial[position + 1:]


def symmetric_poisson(constants: np.ndarray, a: Multivector, b: Multivector) -> Multivector:
    """Lie-Poisson bracket {f, g} = sum_ij df/dx_i dg/dx_j [x_i, x_j] on S(g)"""
    result: Multivector = defaultdict(Fraction)
    dim = constants.shape[0]
    for fs, ca in a.items():
        for gs, cb in b.items():
            for i, j in itertools.product(sorted(set(fs)), sorted(set(gs))):
                ci, rest_f = _derivative(fs, i)
                cj, rest_g = _derivative(gs, j)
                for c in range(dim):
                    k = constants[i, j, c]
                    if k:
                        word = tuple(sorted((c,) + rest_f + rest_g))
                        result[word] += ci * cj * k * ca * cb
    return {w: c for w, c in result.items() if c}


def contravariant_terms(poly: PoissonPoly) -> Multivector:
    """A polynomial in the v generators as words of basis indices of g"""
    algebra = poly.algebra
    return {tuple(i - algebra.dim for i in m): c for m, c in poly.terms.items()
            if algebra.bi_weight(m)[0] == 0}
