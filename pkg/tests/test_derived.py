"""V-structures, derived brackets and the gauge action"""

import pytest

from graded.errors import TruncationError
from graded.verdict import passed
from linfty.structure import check_linfty, require_certificate
from derived.gauge import ad_exponential, gauge, map_i, vmc_check
from derived.higher_brackets import check_extension, derived_brackets_big, derived_brackets_small
from derived.vstructure import StructureConstantDgla, check_vstructure, random_vstructure


@pytest.fixture
def vstructures(rng):
    return [random_vstructure(rng, size=4, name=f"u{k}") for k in range(20)]


def test_random_vstructures_are_admissible(vstructures):
    for vs in vstructures:
        result = check_vstructure(vs)
        assert result['status'] == 'pass', result['residuals']
        assert result['dim_l'] == 6


def test_derived_brackets_satisfy_jacobi(vstructures):
    for vs in vstructures:
        small = derived_brackets_small(vs, cap=4)
        big = derived_brackets_big(vs, cap=4)
        assert passed(check_linfty(small)), vs.name
        assert passed(check_linfty(big)), vs.name
        assert big.space.dim == 6 + len(vs.h_basis())


def test_derived_brackets_form_an_extension(vstructures):
    for vs in vstructures:
        result = check_extension(vs)
        assert result['status'] == 'pass', result['residuals']


def test_vmc_pairs_match_big_algebra_mc(vstructures):
    """For h of degree 0, (0, h) is VMC exactly when (0, h) is MC in L + h[-1]"""
    for vs in vstructures:
        big = derived_brackets_big(vs, cap=4)
        candidates = [h for _, h in vs.h_basis() if h.degree == 0]
        if len(candidates) > 1:
            candidates.append(candidates[0] + candidates[1])
        for h in candidates:
            result = vmc_check(vs, vs.zero(), h, big=big)
            assert result['equivalent'], result['residuals']


def _random_combination(rng, basis, degree):
    terms = [e * rng.choice((-1, 0, 0, 1, 2)) for _, e in basis if e.degree == degree]
    return sum(terms[1:], terms[0]) if terms else None


def test_random_pairs_are_vmc_exactly_when_mc_in_big_algebra(vstructures, rng):
    """Fifty random (x, h) per structure, x of degree 1 in L and h of degree 0 in h"""
    outcomes = set()
    for vs in vstructures:
        big = derived_brackets_big(vs, cap=4)
        for _ in range(50):
            x = _random_combination(rng, vs.l_basis(), 1)
            h = _random_combination(rng, vs.h_basis(), 0)
            x = x if x is not None else vs.zero()
            h = h if h is not None else vs.zero()
            result = vmc_check(vs, x, h, big=big)
            assert result['equivalent'], (vs.name, x.to_text(), h.to_text(), result['residuals'])
            outcomes.add(result['vmc'])
    assert outcomes == {True, False}


def test_derived_brackets_carry_a_filtration_certificate(vstructures):
    for vs in vstructures:
        require_certificate(derived_brackets_small(vs, cap=4))
        require_certificate(derived_brackets_big(vs, cap=4))


def test_gauge_by_zero_is_identity(vstructures):
    vs = vstructures[0]
    assert gauge(vs, vs.zero(), vs.zero()).is_zero()
    assert map_i(vs, vs.zero()).is_zero()


def test_ad_exponential_needs_nilpotent_action(sl2):
    """ad_h on sl2 has eigenvalue -2 on e, so the series never stops"""
    vs = StructureConstantDgla(sl2, [[0, 0, 0], [0, 1, 0], [0, 0, 0]], [1, 1, 1])
    with pytest.raises(TruncationError):
        ad_exponential(vs, sl2.space.basis_element('h'), sl2.space.basis_element('e'))


def test_ad_exponential_of_nilpotent_action(borel):
    """e^(ad_e12) e11 = e11 + [e11, e12] = e11 + e12"""
    vs = StructureConstantDgla(borel, [[0, 0, 0], [0, 1, 0], [0, 0, 0]], [0, 1, 0])
    space = borel.space
    value, steps = ad_exponential(vs, space.basis_element('e12'), space.basis_element('e11'))
    assert value == space.element({'e11': 1, 'e12': 1})
    assert steps == 1
