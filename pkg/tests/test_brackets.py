"""Multibracket families: normalization, composition and the commutator"""

from fractions import Fraction

import numpy as np
import pytest

from graded.errors import ArityError, CapExceededError, SpaceMismatchError
from graded.space import GradedSpace
from brackets.derivation import DerivationRep, compose, derivation_bracket, linear_derivation
from brackets.multimap import MultiMap
from linfty.dgla import lie_algebra
from linfty.structure import dgla_structure

from tests.conftest import SL2_TABLE


def _random_matrix(rng, n):
    return np.array([[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)], dtype=object)


def _linear(space, matrix):
    n = space.dim
    return linear_derivation(space, {j: {i: matrix[i][j] for i in range(n) if matrix[i][j]} for j in range(n)})


def test_composition_of_linear_maps_is_matrix_product(rng):
    space = GradedSpace('W', [('u', 0), ('v', 0), ('w', 0)])
    for _ in range(5):
        a, b = _random_matrix(rng, 3), _random_matrix(rng, 3)
        product = compose(_linear(space, a), _linear(space, b)).component(1).matrix()
        assert (product == a.dot(b)).all()


def test_bracket_of_even_linear_maps_is_commutator(rng):
    space = GradedSpace('W', [('u', 0), ('v', 0), ('w', 0)])
    a, b = _random_matrix(rng, 3), _random_matrix(rng, 3)
    bracket = derivation_bracket(_linear(space, a), _linear(space, b))
    assert bracket == _linear(space, a.dot(b) - b.dot(a))


def test_square_of_lie_bracket_vanishes(sl2_structure):
    m = sl2_structure.brackets
    assert derivation_bracket(m, m).is_zero()
    assert compose(m, m).is_zero()


def test_square_of_broken_bracket_is_twice_the_jacobiator():
    table = {**SL2_TABLE, ('h', 'f'): {'f': -3}}
    m = dgla_structure(lie_algebra('sl2p', ['h', 'e', 'f'], table), cap=3).brackets
    jacobiator = compose(m, m)
    assert jacobiator.arities() == [3]
    assert derivation_bracket(m, m) == jacobiator * 2


def test_odd_words_are_normalized_with_signs(sl2_structure):
    shifted = sl2_structure.shifted
    e = shifted.basis_element('e')
    rep = DerivationRep(shifted, {(1, 0): e, (2, 2): e})
    assert rep.entries == {(0, 1): -e}
    assert rep.value((1, 0)) == e
    assert rep.value((0, 1)) == -e


def test_from_terms_cancels():
    space = GradedSpace('W', [('u', -1), ('v', -1), ('w', 0)])
    rep = DerivationRep.from_terms(space, [((0, 1), 2, 1), ((1, 0), 2, 1)])
    assert rep.is_zero()


def test_cap_drops_high_arities():
    space = GradedSpace('W', [('u', 0), ('v', 0), ('w', 0)])
    rep = DerivationRep(space, {(0, 1, 2): space.basis_element('u')}, cap=2)
    assert rep.is_zero()
    with pytest.raises(CapExceededError):
        DerivationRep(space, {}, cap=13)


def test_arity_zero_terms_are_rejected():
    space = GradedSpace('W', [('u', 0)])
    with pytest.raises(ArityError):
        DerivationRep(space, {(): space.basis_element('u')})


def test_evaluate_on_elements(sl2_structure):
    shifted = sl2_structure.shifted
    h, e = shifted.basis_element('h'), shifted.basis_element('e')
    assert sl2_structure.evaluate([h, e]) == e * 2
    assert sl2_structure.evaluate([h + e, e]) == e * 2


def test_homogeneous_parts_split_by_degree():
    space = GradedSpace('W', [('u', 0), ('v', 1)])
    rep = DerivationRep.from_terms(space, [((0,), 0, 1), ((0,), 1, 1)])
    parts = rep.homogeneous_parts()
    assert sorted(parts) == [0, 1]
    assert rep.degree is None
    assert parts[1].degree == 1


def test_multimap_tabulation_and_composition():
    space = GradedSpace('W', [('u', 0), ('v', 0)])
    swap = MultiMap.from_matrix(space, space, [[0, 1], [1, 0]], 0)
    doubled = MultiMap.from_function(space, space, 1, 0, lambda m: space.basis_element(m[0]) * 2)
    composite = doubled.compose_linear(swap)
    assert (composite.matrix() == swap.matrix().dot(doubled.matrix())).all()
    assert composite.value((0,)) == space.basis_element('v') * 2
    assert doubled.restrict_to([1]).entries == {(1,): space.basis_element('v') * 2}
    other = GradedSpace('X', [('s', 0)])
    with pytest.raises(SpaceMismatchError):
        doubled.compose_linear(MultiMap(other, other, 1, 0))
