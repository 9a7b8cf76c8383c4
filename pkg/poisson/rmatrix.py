"""
r-infinity Matrices and Triangular Bialgebras
"""

import logging
from collections import defaultdict
from typing import Dict, Optional, Tuple

from graded.errors import AlgebraError, PreconditionError
from graded.space import dual_space, format_fraction
from graded.verdict import passed, verdict
from brackets.derivation import DerivationRep
from linfty.maurer_cartan import mc_residual
from linfty.structure import LInftyStructure, check_linfty
from derived.gauge import ad_exponential
from derived.higher_brackets import DerivedStructure, big_mc_residual, derived_brackets_small
from poisson.algebra import PoissonPoly, double, poisson_bracket, undouble
from poisson.schouten import PoissonDgla, build_lhm, schouten_vstructure

logger = logging.getLogger(__name__)


def validate_rmatrix(r: PoissonPoly):
    """Raise AlgebraError unless r is a degree-0 polynomial of weight >= 2 in the v generators"""
    if not r.in_contravariant(min_q=2):
        outside = [r.algebra.monomial_text(m) for m in r.terms if r.algebra.bi_weight(m)[0] or len(m) < 2]
        raise AlgebraError(f"r must be a polynomial of weight >= 2 in the v generators; offending terms {outside}")
    degree = r.degree
    if not r.is_zero() and degree != 0:
        raise AlgebraError(f"r must have degree 0, found terms of degree {sorted(r.homogeneous_parts())}")


def rmatrix_vstructure(m: LInftyStructure, r: PoissonPoly) -> PoissonDgla:
    return schouten_vstructure(m, include_linear=False, algebra=r.algebra)


def _bi_weight_entries(poly: PoissonPoly):
    algebra = poly.algebra
    grouped = defaultdict(list)
    for monomial, c in poly.items():
        grouped[algebra.bi_weight(monomial)].append((monomial, c))
    entries = []
    for (p, q), terms in sorted(grouped.items()):
        for monomial, c in terms:
            entries.append({'relation': f"bi-weight ({p},{q})", 'monomial': algebra.monomial_text(monomial),
                            'residual': format_fraction(c)})
    return entries


def check_rmatrix(m: LInftyStructure, r: PoissonPoly, vs: Optional[PoissonDgla] = None,
                  small: Optional[DerivedStructure] = None) -> Dict:
    """
    P(e^(ad_r) D_n(m)) = 0, reported per bi-weight

    The same r is tested as an MC element of the higher Schouten algebra; the two
    computations are independent and must agree.
    """
    validate_rmatrix(r)
    vs = vs if vs is not None else rmatrix_vstructure(m, r)
    value, steps = ad_exponential(vs, r, vs.D)
    residual = vs.project(value)
    residuals = _bi_weight_entries(residual)
    small = small if small is not None else derived_brackets_small(vs, cap=m.cap)
    small_mc = mc_residual(small, small.h_element(r)).is_zero()
    is_rmatrix = residual.is_zero()
    if small_mc != is_rmatrix:
        residuals.append({'relation': 'equivalence',
                          'residual': f"Schouten MC {small_mc}, projected exponential {is_rmatrix}"})
    algebra = r.algebra
    logger.info(f"r-matrix check on {m.name} (n={algebra.n}): {'pass' if is_rmatrix else 'fail'} "
                f"after {steps} adjoint steps")
    checked = [f"bi-weight (0,{q})" for q in range(2, algebra.weight_cap + 1)]
    return verdict('rmatrix', residuals, checked,
                   caps={'max_arity': m.cap, 'max_weight': algebra.weight_cap},
                   shift=algebra.n, series_length=steps, small_mc=small_mc)


def triangular_bialgebra(m: LInftyStructure, r: PoissonPoly,
                         vs: Optional[PoissonDgla] = None) -> Tuple[PoissonPoly, Dict]:
    """
    r(m) = e^(ad_r) D_n(m) with its certificates: {r(m), r(m)} = 0 and every
    term has both a xi and a v factor

    Raises:
        PreconditionError: m is not L-infinity or r is not an r-infinity matrix
    """
    vs = vs if vs is not None else rmatrix_vstructure(m, r)
    for part in (check_linfty(m), check_rmatrix(m, r, vs)):
        if not passed(part):
            raise PreconditionError(f"Triangular bialgebra needs {part['check']} to pass", report=part)
    rm, steps = ad_exponential(vs, r, vs.D)
    square = poisson_bracket(rm, rm, truncate=True)
    residuals = [dict(entry, relation=f"square_zero {entry['relation']}") for entry in _bi_weight_entries(square)]
    for monomial, c in rm.items():
        if min(rm.algebra.bi_weight(monomial)) < 1:
            residuals.append({'relation': 's_prime', 'monomial': rm.algebra.monomial_text(monomial),
                              'residual': format_fraction(c)})
    report = verdict('triangular_bialgebra', residuals, ['square_zero', 's_prime'],
                     caps={'max_arity': m.cap, 'max_weight': rm.algebra.weight_cap},
                     shift=rm.algebra.n, series_length=steps, bialgebra=rm.to_text())
    return rm, report


def bialgebra_projections(rm: PoissonPoly, cap: Optional[int] = None) -> Tuple[LInftyStructure, LInftyStructure]:
    """
    The L-infinity algebra on g (terms with one v) and the L-infinity algebra on
    g*[n-2] (terms with one xi, read through the hamiltonian map)
    """
    from bridge.hamiltonian import hamiltonian, hlr_algebra

    algebra = rm.algebra
    cap = cap if cap is not None else algebra.weight_cap - 1
    g_part = LInftyStructure(algebra.g, undouble(rm.part(q=1), cap), cap=cap, name=algebra.g.name)
    hlr = hlr_algebra(algebra, cap)
    field = hamiltonian(rm.part(p=1), hlr)
    offset = hlr.offset
    dual = dual_space(algebra.g, algebra.n - 2)
    shifted = dual.shift(1)
    terms = []
    for monomial, output, c in field.terms():
        if output >= offset and all(i >= offset for i in monomial):
            terms.append((tuple(i - offset for i in monomial), output - offset, c))
    co_part = LInftyStructure(dual, DerivationRep.from_terms(shifted, terms, cap), cap=cap, name=dual.name)
    return g_part, co_part


def lhm_mc_check(m: LInftyStructure, r: PoissonPoly, big: Optional[DerivedStructure] = None) -> Dict:
    """
    (D_n(m)[1], r) is MC in L_LHM exactly when m is L-infinity and r is an
    r-infinity matrix for it; both sides are computed
    """
    big = big if big is not None else build_lhm(m.space, r.algebra.n, m.cap)
    algebra = big.vs.algebra
    r_big = r.rehome(algebra)
    residual = big_mc_residual(big, double(m.brackets.truncated(big.cap), algebra), r_big)
    big_mc = residual.is_zero()
    residuals = [{'relation': 'big_mc', 'monomial': big.shifted.symbols[i], 'residual': format_fraction(c)}
                 for i, c in residual.items()]
    parts = [check_linfty(m)]
    if passed(parts[0]):
        parts.append(check_rmatrix(m, r_big))
    bialgebra = len(parts) == 2 and all(passed(p) for p in parts)
    for part in parts:
        for entry in part['residuals']:
            residuals.append(dict(entry, source=part['check']))
    if big_mc != bialgebra:
        residuals.append({'relation': 'equivalence',
                          'residual': f"MC in {big.name}: {big_mc}, triangular bialgebra: {bialgebra}"})
    return verdict('lhm_mc', residuals, ['big_mc', 'linfty', 'rmatrix', 'equivalence'],
                   caps={'max_arity': big.cap, 'max_weight': algebra.weight_cap},
                   big_mc=big_mc, bialgebra=bialgebra, equivalent=big_mc == bialgebra)
