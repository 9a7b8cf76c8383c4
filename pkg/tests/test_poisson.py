"""Shifted Poisson algebra, higher Schouten brackets and r-matrices"""

from fractions import Fraction

import numpy as np
import pytest

from graded.errors import AlgebraError, CapExceededError, WeightOverflowError
from graded.signs import basis_monomials
from graded.space import GradedSpace
from graded.verdict import passed
from brackets.derivation import DerivationRep, derivation_bracket
from linfty.dgla import lie_algebra
from linfty.structure import check_linfty, dgla_structure
from poisson.algebra import PoissonAlgebra, double, poisson_algebra_for, poisson_bracket, undouble
from poisson.oracles import classical_schouten, contravariant_terms, symmetric_poisson
from poisson.rmatrix import bialgebra_projections, check_rmatrix, lhm_mc_check, triangular_bialgebra
from poisson.schouten import schouten_structure

from tests.conftest import AFF1_TABLE, SL2_TABLE

SYMBOLS = ['h', 'e', 'f']
WEDGES = {(0, 1): 'h^e', (0, 2): 'h^f', (1, 2): 'e^f'}


def _constants(table, symbols=SYMBOLS):
    index = {s: i for i, s in enumerate(symbols)}
    dim = len(symbols)
    c = np.full((dim, dim, dim), Fraction(0), dtype=object)
    for (a, b), values in table.items():
        for s, value in values.items():
            c[index[a], index[b], index[s]] += value
            c[index[b], index[a], index[s]] -= value
    return c


@pytest.fixture
def algebra(sl2):
    return poisson_algebra_for(sl2.space, n=2, cap=3)


def test_pairing_of_generators(algebra):
    xi_h, v_h, v_e = (algebra.generator(i) for i in (algebra.xi(0), algebra.v(0), algebra.v(1)))
    assert poisson_bracket(xi_h, v_h) == algebra.monomial((), 1)
    assert poisson_bracket(xi_h, v_e).is_zero()


def test_weight_cap_is_enforced(sl2):
    small = PoissonAlgebra(sl2.space, 2, weight_cap=2)
    with pytest.raises(WeightOverflowError):
        small.contravariant({(0, 1, 2): 1})
    with pytest.raises(CapExceededError):
        poisson_algebra_for(sl2.space, 2, cap=3, weight_cap=3)


def test_double_round_trip(sl2_structure, aff1_structure):
    for m in (sl2_structure, aff1_structure):
        for n in (1, 2):
            algebra = poisson_algebra_for(m.space, n=n, cap=m.cap)
            assert undouble(double(m, algebra), m.cap) == m.brackets


def test_double_squares_to_zero_exactly_for_lie_brackets(sl2_structure, algebra):
    dm = double(sl2_structure, algebra)
    assert poisson_bracket(dm, dm).is_zero()
    perturbed = dgla_structure(lie_algebra('sl2p', SYMBOLS, {**SL2_TABLE, ('h', 'f'): {'f': -3}}), cap=3)
    dp = double(perturbed, algebra)
    assert not poisson_bracket(dp, dp).is_zero()


def _random_derivation(rng, space, cap=2):
    """One or two elementary derivations of a common degree, arity at most cap"""
    elementary = [(m, t) for k in range(1, cap + 1) for m in basis_monomials(space.degrees, k)
                  for t in range(space.dim)]
    monomial, output = rng.choice(elementary)
    degree = space.degrees[output] - sum(space.degrees[i] for i in monomial)
    same = [(m, t) for m, t in elementary if space.degrees[t] - sum(space.degrees[i] for i in m) == degree]
    terms = [(monomial, output, rng.choice((1, -1, 2)))]
    if rng.random() < 0.5:
        m, t = rng.choice(same)
        terms.append((m, t, rng.choice((1, -1, Fraction(1, 2)))))
    return DerivationRep.from_terms(space, terms, 3)


@pytest.mark.parametrize('n', [0, 1, 2, 3])
def test_double_is_a_lie_map(rng, n):
    """D_n[D1, D2] = {D_n D1, D_n D2} on 105 random pairs, over g of mixed degrees"""
    checked = 0
    for degrees in ([0, 0], [0, 1], [1, 2]):
        g = GradedSpace('g', [('a', degrees[0]), ('b', degrees[1])])
        algebra = PoissonAlgebra(g, n, weight_cap=4)
        for _ in range(35):
            first = _random_derivation(rng, algebra.g_shifted)
            second = _random_derivation(rng, algebra.g_shifted)
            lhs = double(derivation_bracket(first, second), algebra)
            rhs = poisson_bracket(double(first, algebra), double(second, algebra))
            assert lhs == rhs, (degrees, first.to_text(), second.to_text())
            checked += 1
    assert checked == 105


def test_schouten_structure_is_linfty(sl2_structure):
    schouten = schouten_structure(sl2_structure, 2, cap=3, weight_cap=4)
    result = check_linfty(schouten)
    assert result['status'] == 'pass', result['residuals']


def test_rmatrix_degree(algebra):
    r = algebra.contravariant({(0, 1): 1})
    assert r.degree == 0
    assert r.in_contravariant()


def test_rmatrix_check_agrees_with_classical_schouten(sl2_structure, algebra):
    """h^e and h^f are triangular r-matrices of sl(2); e^f is not"""
    constants = _constants(SL2_TABLE)
    verdicts = {}
    for word, label in WEDGES.items():
        r = algebra.contravariant({word: 1})
        multivector = contravariant_terms(r)
        square_zero = not classical_schouten(constants, multivector, multivector)
        verdicts[label] = passed(check_rmatrix(sl2_structure, r))
        assert verdicts[label] == square_zero, label
    assert verdicts == {'h^e': True, 'h^f': True, 'e^f': False}


@pytest.mark.parametrize('terms', [
    {(0, 1): 1}, {(0, 1): Fraction(-3, 2)},
])
def test_rmatrix_check_on_aff1(aff1_structure, terms):
    """x^y squares to zero in the vanishing third exterior power of aff(1)"""
    algebra = poisson_algebra_for(aff1_structure.space, n=2, cap=3)
    r = algebra.contravariant(terms)
    multivector = contravariant_terms(r)
    assert not classical_schouten(_constants(AFF1_TABLE, ['x', 'y']), multivector, multivector)
    assert passed(check_rmatrix(aff1_structure, r))


def test_rmatrix_check_agrees_on_sums_of_wedges(sl2_structure, algebra):
    constants = _constants(SL2_TABLE)
    for terms in ({(0, 1): 1, (0, 2): 1}, {(0, 1): 2, (1, 2): 1}, {(0, 2): -1, (1, 2): 1}):
        r = algebra.contravariant(terms)
        multivector = contravariant_terms(r)
        square_zero = not classical_schouten(constants, multivector, multivector)
        assert passed(check_rmatrix(sl2_structure, r)) == square_zero, terms


def test_rmatrix_must_be_contravariant(sl2_structure, algebra):
    with pytest.raises(AlgebraError):
        check_rmatrix(sl2_structure, algebra.from_symbols({('h*', 'e'): 1}))


def test_triangular_bialgebra(sl2_structure, algebra):
    rm, report = triangular_bialgebra(sl2_structure, algebra.contravariant({(0, 1): 1}))
    assert report['status'] == 'pass', report['residuals']
    assert rm.in_s_prime()
    g_part, co_part = bialgebra_projections(rm, cap=3)
    assert g_part.brackets == sl2_structure.brackets
    assert passed(check_linfty(g_part))
    assert passed(check_linfty(co_part))
    assert not co_part.is_abelian()


def test_lhm_mc_matches_bialgebra(sl2):
    m = dgla_structure(sl2, cap=2)
    algebra = poisson_algebra_for(sl2.space, n=2, cap=2)
    good = lhm_mc_check(m, algebra.contravariant({(0, 1): 1}))
    assert good['equivalent'] and good['big_mc'] and good['bialgebra']
    bad = lhm_mc_check(m, algebra.contravariant({(1, 2): 1}))
    assert bad['equivalent'] and not bad['big_mc']


def test_lie_poisson_oracle():
    """{h^2, e} = 2h [h, e] = 4 he on S(sl2)"""
    constants = _constants(SL2_TABLE)
    assert symmetric_poisson(constants, {(0, 0): 1}, {(1,): 1}) == {(0, 1): 4}
    a, b = {(1, 2): 1}, {(0,): 1, (2, 2): 3}
    forward = symmetric_poisson(constants, a, b)
    backward = symmetric_poisson(constants, b, a)
    assert forward == {w: -c for w, c in backward.items()}
