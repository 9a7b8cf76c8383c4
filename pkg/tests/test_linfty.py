"""Jacobi relations, morphisms, representations and Maurer-Cartan elements"""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from graded.errors import AlgebraError, PreconditionError
from graded.space import GradedSpace
from graded.verdict import passed
from brackets.derivation import DerivationRep
from linfty.cdga import (CdgaMorphism, cdga_base_change, check_cdga, dual_numbers, exterior_cdga, extend_morphism,
                         extend_scalars, truncated_polynomials)
from linfty.dgla import lie_algebra
from linfty.maurer_cartan import is_mc, mc_pushforward, mc_residual
from linfty.morphism import (adjoint_representation, check_morphism, identity_morphism, matrix_morphism,
                             representation_check, zero_representation)
from linfty.structure import (LInftyStructure, abelian_structure, check_filtered, check_linfty, check_weakly_filtered,
                              dgla_structure)

from tests.conftest import SL2_TABLE


def _jacobi_holds(symbols, table):
    """Brute-force Jacobi identity on structure constants, independent of the multibracket code"""
    n = len(symbols)
    index = {s: i for i, s in enumerate(symbols)}
    c = np.full((n, n, n), Fraction(0), dtype=object)
    for (a, b), values in table.items():
        for s, value in values.items():
            c[index[a], index[b], index[s]] += Fraction(value)
            c[index[b], index[a], index[s]] -= Fraction(value)
    for i, j, k in itertools.product(range(n), repeat=3):
        cyclic = (c[j, k].dot(c[i]) + c[k, i].dot(c[j]) + c[i, j].dot(c[k]))
        if any(x != 0 for x in cyclic):
            return False
    return True


def test_standard_algebras_are_linfty(sl2_structure, aff1_structure, borel):
    for structure in (sl2_structure, aff1_structure, dgla_structure(borel, cap=3)):
        result = check_linfty(structure)
        assert result['status'] == 'pass', result['residuals']
        assert result['checked'] == ['arity 1', 'arity 2', 'arity 3']


def test_abelian_structure_passes():
    space = GradedSpace('a', [('a', 0), ('b', 1)])
    assert passed(check_linfty(abelian_structure(space, cap=4)))


def test_broken_jacobi_reports_first_violation():
    table = {**SL2_TABLE, ('h', 'f'): {'f': -3}}
    result = check_linfty(dgla_structure(lie_algebra('sl2p', ['h', 'e', 'f'], table), cap=3))
    assert result['status'] == 'fail'
    assert result['first_violation']['arity'] == 3
    assert result['first_violation']['monomial'] == 'h*e*f'


def test_check_linfty_agrees_with_jacobi_oracle():
    """Every single-constant perturbation of sl2: pass exactly when the Jacobi identity holds"""
    symbols = ['h', 'e', 'f']
    seen = set()
    for key, (output, _) in ((k, next(iter(v.items()))) for k, v in SL2_TABLE.items()):
        for value in (-3, -2, -1, 0, 1, 2, 3):
            table = {**SL2_TABLE, key: {output: value}}
            structure = dgla_structure(lie_algebra('p', symbols, table), cap=3)
            verdict = passed(check_linfty(structure))
            assert verdict == _jacobi_holds(symbols, table), (key, value)
            seen.add(verdict)
    assert seen == {True, False}


def test_rescaling_a_bracket_keeps_jacobi():
    table = {**SL2_TABLE, ('e', 'f'): {'h': 5}}
    assert passed(check_linfty(dgla_structure(lie_algebra('p', ['h', 'e', 'f'], table), cap=3)))


def test_dgla_identity_check(sl2):
    assert passed(sl2.identity_check())


def test_brackets_must_have_degree_one():
    space = GradedSpace('g', [('x', 0), ('y', 0)])
    shifted = space.shift(1)
    rep = DerivationRep(shifted, {(0,): shifted.basis_element('y')})
    with pytest.raises(AlgebraError):
        LInftyStructure(space, rep)


def test_filtration_by_weight():
    """The Heisenberg algebra is filtered when the center has weight 2"""
    heisenberg = dgla_structure(lie_algebra('heis', ['p', 'q', 'z'], {('p', 'q'): {'z': 1}}), cap=3)
    assert passed(check_filtered(heisenberg, {'p': 1, 'q': 1, 'z': 2}))
    assert not passed(check_filtered(heisenberg, {'p': 1, 'q': 1, 'z': 1}))


def test_identity_morphism(sl2_structure):
    assert passed(check_morphism(identity_morphism(sl2_structure)))


def test_borel_embedding_is_a_morphism(aff1_structure, sl2_structure):
    """x -> h/2, y -> e embeds aff(1) in sl(2); x -> h does not"""
    half = Fraction(1, 2)
    embedding = matrix_morphism(aff1_structure, sl2_structure, [[half, 0], [0, 1], [0, 0]])
    assert passed(check_morphism(embedding))
    scaled = matrix_morphism(aff1_structure, sl2_structure, [[half, 0], [0, 2], [0, 0]])
    assert passed(check_morphism(scaled))
    wrong = matrix_morphism(aff1_structure, sl2_structure, [[1, 0], [0, 1], [0, 0]])
    result = check_morphism(wrong)
    assert result['status'] == 'fail'
    assert result['first_violation']['monomial'] == 'x*y'


def test_adjoint_representation(sl2, aff1):
    for dgla in (sl2, aff1):
        assert passed(representation_check(adjoint_representation(dgla, cap=3)))


def test_representation_check_needs_gl_target(sl2_structure):
    with pytest.raises(AlgebraError):
        representation_check(identity_morphism(sl2_structure))


def test_nilpotent_cdgas():
    for algebra, nu in ((dual_numbers(), 2), (truncated_polynomials(3), 3), (exterior_cdga(2), 3)):
        result = check_cdga(algebra)
        assert result['status'] == 'pass', result['residuals']
        assert result['nilpotency'] == nu


def test_truncated_polynomials_need_nu_two():
    with pytest.raises(AlgebraError):
        truncated_polynomials(1)


def test_mc_elements_over_exterior_coefficients(sl2_structure):
    """th1.e + th2.e is MC because [e, e] = 0; th1.e + th2.f is not because [e, f] = h"""
    algebra = exterior_cdga(2)
    extended = extend_scalars(sl2_structure, algebra)
    good = extended.element({('th1', 'e'): 1, ('th2', 'e'): 1})
    bad = extended.element({('th1', 'e'): 1, ('th2', 'f'): 1})
    assert is_mc(extended, good)
    residual = mc_residual(sl2_structure, bad, algebra=algebra)
    assert not residual.is_zero()
    assert set(residual.terms) == {extended.shifted.index('th1th2.h')}


def test_mc_pushforward_along_identity(sl2_structure):
    algebra = exterior_cdga(2)
    extended = extend_scalars(sl2_structure, algebra)
    xi = extended.element({('th1', 'e'): 1, ('th2', 'e'): 3})
    image = mc_pushforward(identity_morphism(sl2_structure), xi, algebra=algebra)
    assert image == xi


def test_mc_pushforward_rejects_non_mc(sl2_structure):
    algebra = exterior_cdga(2)
    extended = extend_scalars(sl2_structure, algebra)
    bad = extended.element({('th1', 'e'): 1, ('th2', 'f'): 1})
    with pytest.raises(PreconditionError):
        mc_pushforward(identity_morphism(sl2_structure), bad, algebra=algebra)


def test_extended_identity_is_a_morphism(aff1_structure):
    extended = extend_morphism(identity_morphism(aff1_structure), exterior_cdga(2))
    assert passed(check_morphism(extended))


def test_weak_filtration_levels():
    """With every weight 1 only the brackets of arity at most the level may escape"""
    heisenberg = dgla_structure(lie_algebra('heis', ['p', 'q', 'z'], {('p', 'q'): {'z': 1}}), cap=3)
    flat = {'p': 1, 'q': 1, 'z': 1}
    assert passed(check_weakly_filtered(heisenberg, {'p': 1, 'q': 1, 'z': 2}, 1))
    assert not passed(check_weakly_filtered(heisenberg, flat, 1))
    assert passed(check_weakly_filtered(heisenberg, flat, 2))


def test_zero_representation(sl2_structure):
    V = GradedSpace('V', [('a', 0), ('b', 0)])
    assert passed(representation_check(zero_representation(sl2_structure, V)))


def test_cdga_base_change(aff1_structure):
    """t -> eps is a cdga map k[t]/t^3 -> k[eps]/eps^2; t -> eps, t^2 -> eps is not"""
    source, target = truncated_polynomials(3), dual_numbers()
    eps = target.space.basis_element('eps')
    phi = CdgaMorphism(source, target, {1: eps})
    assert passed(phi.check())
    assert passed(check_morphism(cdga_base_change(aff1_structure, phi)))
    assert not passed(CdgaMorphism(source, target, {1: eps, 2: eps}).check())
