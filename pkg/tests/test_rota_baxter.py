"""Lie-representation pairs, Rota-Baxter operators and the governing algebra of triples"""

import numpy as np
import pytest

from graded.errors import AlgebraError, PreconditionError, SpaceMismatchError, TruncationError
from graded.space import Element, GradedSpace
from graded.verdict import passed
from brackets.derivation import DerivationRep
from linfty.structure import LInftyStructure, check_linfty, require_certificate
from derived.gauge import ad_exponential, map_i, map_j, mc_residual_dgla
from derived.higher_brackets import derived_brackets_small
from derived.vstructure import DerivationDgla
from rota_baxter.classical import (classical_rb_residual, is_classical_rb, operator_grid, pair_constants,
                                   solve_classical_rb_grid, twisted_classical)
from rota_baxter.hlr import HlrAlgebra, HLRPair, adjoint_pair, build_hlr, classical_pair, embed_hlr
from rota_baxter.lhrb import build_lhrb, lhrb_extension_check, rb_triple_mc_check
from rota_baxter.operator import RBOperator, check_rb_operator, rb_vstructure

from tests.conftest import AFF1_ADJOINT

SOLUTION = [[0, 1], [0, 0]]
PERTURBED = [[0, 1], [1, 0]]


def _pair(aff1, cap=2):
    V = GradedSpace('V', [('a', 0), ('b', 0)])
    return classical_pair(aff1, AFF1_ADJOINT, V, cap=cap)


@pytest.fixture
def pair(aff1):
    return _pair(aff1)


def test_pair_is_mc(pair):
    assert passed(pair.check())
    assert passed(pair.mc_check())


def test_adjoint_pair_is_mc(aff1):
    assert passed(adjoint_pair(aff1, cap=2).mc_check())


def test_pair_from_its_element(pair):
    rebuilt = HLRPair.from_element(pair.algebra, pair.element)
    assert rebuilt.element == pair.element


def test_hlr_jacobi_identity(pair, rng):
    assert passed(pair.algebra.jacobi_check(rng))


def test_rota_baxter_block():
    """g = span(x, y) sits at indices 0, 1 and V = span(a, b) at 2, 3"""
    algebra = HlrAlgebra(GradedSpace('g', [('x', 0), ('y', 0)]), GradedSpace('V', [('a', 0), ('b', 0)]), cap=2)
    assert algebra.in_rb_block((2, 3), 0)
    assert algebra.in_rb_block((2,), 1)
    assert not algebra.in_rb_block((0, 2), 0)
    assert not algebra.in_rb_block((2,), 3)
    assert algebra.in_hlr((0, 2), 3)
    assert not algebra.in_hlr((2, 3), 3)


def test_classical_grid_has_fifteen_solutions(pair):
    """(p + s) r = 0 and s^2 + q r = 0 for T(a) = p x + q y, T(b) = r x + s y"""
    constants, action = pair_constants(pair)
    assert len(solve_classical_rb_grid(constants, action)) == 15


def test_classical_residual_of_perturbation(pair):
    constants, action = pair_constants(pair)
    assert is_classical_rb(constants, action, np.array(SOLUTION, dtype=object))
    residuals = classical_rb_residual(constants, action, np.array(PERTURBED, dtype=object))
    assert len(residuals) == 1
    assert residuals[0]['monomial'] == (0, 1)
    assert residuals[0]['residual'] == [0, -1]


def test_operator_matrix(pair):
    operator = RBOperator.from_matrix(pair.algebra, PERTURBED)
    assert (operator.matrix() == np.array(PERTURBED, dtype=object)).all()
    assert operator.arities() == [1]


def test_operator_terms_must_map_v_to_g(pair):
    space = pair.algebra.space
    with pytest.raises(AlgebraError):
        RBOperator(pair.algebra, DerivationRep(space, {(0,): space.basis_element(1)}))
    with pytest.raises(SpaceMismatchError):
        RBOperator.from_components(pair.algebra, {(0,): pair.V.basis_element('a')})


def test_rb_check_agrees_with_classical_identity(pair):
    """Every operator with entries in {-1, 0, 1}"""
    constants, action = pair_constants(pair)
    vs = rb_vstructure(pair)
    small = derived_brackets_small(vs, cap=pair.algebra.cap)
    grid = operator_grid(pair)
    assert len(grid) == 81
    for matrix in grid:
        operator = RBOperator.from_matrix(pair.algebra, matrix)
        result = check_rb_operator(pair, operator, vs, small)
        assert passed(result) == is_classical_rb(constants, action, matrix), matrix.tolist()
        assert result['small_mc'] == passed(result)


def test_rb_check_reports_perturbation(pair):
    assert passed(check_rb_operator(pair, RBOperator.from_matrix(pair.algebra, SOLUTION)))
    result = check_rb_operator(pair, RBOperator.from_matrix(pair.algebra, PERTURBED))
    assert result['status'] == 'fail'
    assert result['residuals'][0]['relation'] == 'arity 2'


def test_twisted_bracket_is_lie(aff1):
    """The twist keeps Jacobi; its V x V -> g part is the Rota-Baxter defect"""
    pair = _pair(aff1, cap=3)
    algebra = pair.algebra
    constants, action = pair_constants(pair)
    for matrix in (SOLUTION, PERTURBED, [[1, 0], [0, 0]], [[1, 1], [-1, 1]]):
        twisted = twisted_classical(pair, np.array(matrix, dtype=object))
        assert passed(check_linfty(LInftyStructure(algebra.unshifted, twisted, cap=3)))
        defect = [t for t in twisted.terms() if len(t[0]) == 2 and algebra.in_rb_block(t[0], t[1])]
        assert bool(defect) != is_classical_rb(constants, action, np.array(matrix, dtype=object))


def test_rb_triples_are_mc_in_lhrb(pair):
    big = build_lhrb(pair.algebra.g, pair.algebra.V, algebra=pair.algebra)
    good = rb_triple_mc_check(pair, RBOperator.from_matrix(pair.algebra, SOLUTION), big)
    assert good['equivalent'] and good['big_mc'] and good['triple']
    bad = rb_triple_mc_check(pair, RBOperator.from_matrix(pair.algebra, PERTURBED), big)
    assert bad['equivalent'] and not bad['big_mc']


def test_lhrb_extension(pair):
    result = lhrb_extension_check(pair.algebra)
    assert result['status'] == 'pass', result['residuals']
    assert result['check'] == 'lhrb_extension'


def test_embed_and_split_are_inverse():
    g = GradedSpace('g', [('x', 0), ('y', 0)])
    V = GradedSpace('V', [('a', 0), ('b', 0)])
    algebra = build_hlr(g, V, cap=2)
    assert isinstance(algebra, HlrAlgebra)
    der = DerivationRep.from_terms(algebra.g_shifted, [((0, 1), 0, 1)], 2)
    gl_parts = {(0,): Element(algebra.gl, {1: 1})}
    v_differential = {0: V.basis_element('b')}
    element = embed_hlr(algebra, der=der, gl_parts=gl_parts, v_differential=v_differential)
    assert algebra.contains(element)
    assert algebra.split(element) == (der, gl_parts, v_differential)


def test_gauge_maps_send_operators_into_the_kernel(pair):
    """0 * T = e^(ad_T) Phi - Phi for a Rota-Baxter operator T"""
    vs = rb_vstructure(pair)
    operator = RBOperator.from_matrix(pair.algebra, SOLUTION)
    image = map_i(vs, operator.rep)
    expected, _ = ad_exponential(vs, operator.rep, pair.element)
    assert image == expected - pair.element
    assert vs.project(image).is_zero()
    assert mc_residual_dgla(vs, image).is_zero()
    assert map_j(vs, vs.zero(), operator.rep) == image


def test_gauge_maps_reject_non_operators(pair):
    vs = rb_vstructure(pair)
    perturbed = RBOperator.from_matrix(pair.algebra, PERTURBED)
    with pytest.raises(PreconditionError):
        map_i(vs, perturbed.rep)
    with pytest.raises(PreconditionError):
        map_j(vs, vs.zero(), perturbed.rep)


def test_filtration_certificate_needs_weight_raising_brackets(pair):
    """A weight that brackets with h do not raise gives no certificate"""
    algebra = pair.algebra
    require_certificate(derived_brackets_small(rb_vstructure(pair), cap=2))
    flat = DerivationDgla(algebra.space, pair.element, algebra.in_rb_block, lambda monomial, output: 0,
                          cap=algebra.cap, weight_cap=algebra.cap + 1, name='flat')
    small = derived_brackets_small(flat, cap=2)
    assert 2 in small.brackets.arities()
    with pytest.raises(TruncationError):
        require_certificate(small)
