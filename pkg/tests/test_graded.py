"""Signs, unshuffles, graded spaces and verdicts"""

from fractions import Fraction

import pytest

from graded.errors import AlgebraError, PermutationError, SpaceMismatchError
from graded.signs import (basis_monomials, koszul_sign, monomial_multiplicity, multi_unshuffles,
                          normalize_monomial, unshuffles)
from graded.space import (GradedSpace, direct_sum, dual_space, format_fraction, shift_element, shift_space,
                          to_fraction)
from graded.verdict import combine, passed, verdict


def test_koszul_sign_of_odd_transposition():
    """Swapping two odd factors costs a sign, swapping an even one does not"""
    assert koszul_sign((1, 0), (1, 1)) == -1
    assert koszul_sign((1, 0), (0, 1)) == 1
    assert koszul_sign((1, 0), (2, 3)) == 1


def test_koszul_sign_accepts_one_based_permutations():
    assert koszul_sign((2, 1), (1, 1)) == koszul_sign((1, 0), (1, 1))


def test_koszul_sign_of_cycle():
    """A 3-cycle of odd factors is two transpositions"""
    assert koszul_sign((2, 0, 1), (1, 1, 1)) == 1
    assert koszul_sign((1, 0, 2), (1, 1, 1)) == -1


def test_koszul_sign_rejects_non_permutations():
    with pytest.raises(PermutationError):
        koszul_sign((0, 0), (1, 1))
    with pytest.raises(PermutationError):
        koszul_sign((0, 1), (1,))


def test_normalize_monomial():
    assert normalize_monomial([1, 0], [1, 1]) == ((0, 1), -1)
    assert normalize_monomial([1, 0], [0, 1]) == ((0, 1), 1)
    assert normalize_monomial([0, 0], [0]) == ((0, 0), 1)


def test_repeated_odd_factor_vanishes():
    _, sign = normalize_monomial([0, 1, 0], [1, 0])
    assert sign == 0


def test_unshuffle_counts():
    assert len(list(unshuffles(2, 4))) == 6
    assert len(list(unshuffles(0, 3))) == 1
    assert len(list(multi_unshuffles([1, 1, 2]))) == 12


def test_unshuffles_increase_on_both_blocks():
    for sigma in unshuffles(2, 5):
        head, tail = sigma[:2], sigma[2:]
        assert list(head) == sorted(head)
        assert list(tail) == sorted(tail)
        assert sorted(sigma) == list(range(5))


def test_unshuffle_block_out_of_range():
    with pytest.raises(PermutationError):
        unshuffles(5, 4)


def test_basis_monomials_skip_odd_squares():
    assert basis_monomials([1, 0], 2) == [(0, 1), (1, 1)]
    assert basis_monomials([1, 1, 1], 3) == [(0, 1, 2)]


def test_monomial_multiplicity():
    assert monomial_multiplicity((0, 0, 1, 1, 1)) == 12
    assert monomial_multiplicity((0, 1, 2)) == 1


def test_to_fraction():
    assert to_fraction('3/6') == Fraction(1, 2)
    assert to_fraction(' -2 ') == Fraction(-2)
    assert to_fraction(Fraction(2, 3)) == Fraction(2, 3)
    for bad in ('1/0', 'x', True, 0.5):
        with pytest.raises(AlgebraError):
            to_fraction(bad)


def test_format_fraction():
    assert format_fraction(Fraction(-3, 4)) == '-3/4'
    assert format_fraction(Fraction(4)) == '4'


def test_space_rejects_duplicate_symbols():
    with pytest.raises(AlgebraError):
        GradedSpace('g', [('x', 0), ('x', 1)])


def test_shift_lowers_degrees():
    g = GradedSpace('g', [('x', 0), ('y', 2)])
    shifted = g.shift(1)
    assert shifted.degrees == (-1, 1)
    assert shifted.parities == (1, 1)
    assert shifted.name == 'g[1]'
    assert g.shift(0) is g


def test_shift_element_keeps_coefficients():
    g = GradedSpace('g', [('x', 0), ('y', 2)])
    moved = shift_element(g.element({'y': 3}), 1)
    assert moved.space == shift_space(g, 1)
    assert moved.coefficient('y') == 3
    assert moved.degree == 1
    assert shift_element(moved, -1) == g.element({'y': 3})


def test_dual_space_negates_degrees():
    g = GradedSpace('g', [('x', 0), ('y', 2)])
    dual = dual_space(g, shift=1)
    assert dual.symbols == ('x*', 'y*')
    assert dual.degrees == (-1, -3)


def test_element_arithmetic_and_text():
    g = GradedSpace('sl2', [('h', 0), ('e', 0), ('f', 0)])
    x = g.element({'h': 2, 'e': -1})
    assert x.to_text() == '2*h - e'
    assert (x - x).is_zero()
    assert (x * Fraction(1, 2)).coefficient('h') == 1
    assert g.zero().to_text() == '0'


def test_elements_of_different_spaces_do_not_mix():
    g = GradedSpace('g', [('x', 0)])
    h = GradedSpace('h', [('y', 0)])
    with pytest.raises(SpaceMismatchError):
        g.basis_element('x') + h.basis_element('y')


def test_verdict_and_combine():
    good = verdict('first', [], ['arity 1'])
    bad = verdict('second', [{'monomial': 'x', 'residual': '1'}], ['arity 1'])
    assert passed(good) and not passed(bad)
    merged = combine('both', [good, bad])
    assert merged['status'] == 'fail'
    assert merged['checked'] == ['first', 'second']
    assert merged['residuals'][0]['source'] == 'second'
    assert merged['parts'][0] is good


def test_direct_sum_blocks():
    g = GradedSpace('g', [('x', 0), ('y', 0)])
    V = GradedSpace('V', [('a', 1)])
    total = direct_sum(g, V)
    assert total.symbols == ('x', 'y', 'a')
    assert total.block('V') == (2, 1)
    element = total.element({'y': 2, 'a': -1})
    assert element.restrict('g') == {1: 2}
    assert element.restrict('V') == {0: -1}
    with pytest.raises(AlgebraError):
        total.block('W')
