"""Hamiltonian vector fields and the r-matrix / Rota-Baxter diagram"""

from fractions import Fraction

import numpy as np
import pytest

from graded.errors import AlgebraError, PreconditionError
from graded.verdict import passed
from linfty.structure import dgla_structure
from poisson.algebra import poisson_algebra_for
from poisson.rmatrix import check_rmatrix
from bridge.diagram import check_bridge_diagram, coadjoint, rmatrix_to_rb
from bridge.hamiltonian import hamiltonian, hamiltonian_of_derivation


def test_coadjoint_pair_of_aff1(aff1_structure):
    """rho(x) = -ad_x^T on aff(1)*"""
    pair, matrices = coadjoint(aff1_structure, n=2, cap=3)
    assert passed(pair.check())
    assert passed(pair.mc_check())
    expected = [[[0, 0], [0, -1]], [[0, 1], [0, 0]]]
    assert len(matrices) == 2
    for matrix, values in zip(matrices, expected):
        assert (np.array(matrix, dtype=object) == np.array(values, dtype=object)).all()


def test_rmatrix_becomes_rb_operator(sl2_structure):
    algebra = poisson_algebra_for(sl2_structure.space, n=2, cap=3)
    operator, certificate = rmatrix_to_rb(sl2_structure, algebra.contravariant({(0, 1): 1}))
    assert certificate['status'] == 'pass', certificate['residuals']
    matrix = np.array([[Fraction(c) for c in row] for row in certificate['matrix']], dtype=object)
    assert {(i, j) for i in range(3) for j in range(3) if matrix[i, j]} == {(0, 1), (1, 0)}
    assert matrix[0, 1] == -matrix[1, 0]
    assert (operator.matrix() == matrix).all()


def test_rmatrix_to_rb_needs_an_rmatrix(sl2_structure):
    algebra = poisson_algebra_for(sl2_structure.space, n=2, cap=3)
    with pytest.raises(PreconditionError):
        rmatrix_to_rb(sl2_structure, algebra.contravariant({(1, 2): 1}))


def test_hamiltonian_recovers_derivation(sl2_structure):
    algebra = poisson_algebra_for(sl2_structure.space, n=2, cap=3, weight_cap=4)
    element, result = hamiltonian_of_derivation(sl2_structure.brackets, algebra)
    assert result['status'] == 'pass', result['residuals']
    assert not element.is_zero()


def test_hamiltonian_rejects_linear_terms(sl2_structure):
    algebra = poisson_algebra_for(sl2_structure.space, n=2, cap=3)
    with pytest.raises(AlgebraError):
        hamiltonian(algebra.generator(algebra.v(0)))


def test_bridge_diagram_commutes(aff1):
    """x ^ y is an r-matrix of aff(1): its square lies in a zero exterior power"""
    m = dgla_structure(aff1, cap=2)
    r = poisson_algebra_for(m.space, n=2, cap=2).contravariant({(0, 1): 1})
    result = check_bridge_diagram(m, 2, cap=2, r=r)
    assert result['status'] == 'pass', result['residuals']
    assert result['checked'] == ['hamiltonian_lie', 'hamiltonian_projection', 'hamiltonian_composite',
                                 'strict_map', 'mc_transport']
    transport = result['parts'][-1]
    assert transport['source_mc'] and transport['target_mc']


@pytest.mark.parametrize('word', [(0, 1), (0, 2)])
def test_bridge_diagram_for_sl2_rmatrices(sl2, word):
    m = dgla_structure(sl2, cap=3)
    r = poisson_algebra_for(m.space, n=2, cap=3).contravariant({word: 1})
    assert passed(check_rmatrix(m, r))
    _, certificate = rmatrix_to_rb(m, r)
    assert certificate['status'] == 'pass', certificate['residuals']
    result = check_bridge_diagram(m, 2, cap=3, r=r)
    assert result['status'] == 'pass', result['residuals']
    transport = result['parts'][-1]
    assert transport['source_mc'] and transport['target_mc']


def test_bridge_diagram_for_aff1_up_to_arity_four(aff1):
    m = dgla_structure(aff1, cap=4)
    r = poisson_algebra_for(m.space, n=2, cap=4).contravariant({(0, 1): Fraction(1, 2)})
    result = check_bridge_diagram(m, 2, cap=4, r=r)
    assert result['status'] == 'pass', result['residuals']
    assert result['caps']['max_arity'] == 4
    assert result['parts'][-1]['target_mc']


@pytest.mark.parametrize('n', [1, 3])
def test_bridge_diagram_reports_rmatrix_of_wrong_degree(aff1, n):
    """For odd n a wedge of two v generators has nonzero degree"""
    m = dgla_structure(aff1, cap=2)
    r = poisson_algebra_for(m.space, n=n, cap=2).contravariant({(0, 1): 1})
    result = check_bridge_diagram(m, n, cap=2, r=r)
    assert result['status'] == 'fail'
    transport = result['parts'][-1]
    assert transport['check'] == 'mc_transport'
    assert not transport['source_mc'] and not transport['target_mc']
    assert any('degree 0' in entry['residual'] for entry in transport['residuals'])
