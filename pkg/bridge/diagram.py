"""
Bridge Between r-Matrices and Rota-Baxter Operators
The coadjoint pair H(D_n(m)), the operator H(r), and the commutation checks
relating L_LHM(g) with L_LHRB(g, g*[n-2])
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from graded.errors import AlgebraError, PreconditionError
from graded.verdict import combine, passed, verdict
from brackets.derivation import DerivationRep, derivation_bracket
from linfty.morphism import LInftyMorphism, check_morphism
from linfty.structure import LInftyStructure
from derived.higher_brackets import DerivedStructure
from poisson.algebra import PoissonAlgebra, PoissonPoly, double, poisson_algebra_for, poisson_bracket, undouble
from poisson.rmatrix import check_rmatrix, lhm_mc_check, validate_rmatrix
from poisson.schouten import require_linfty, build_lhm
from rota_baxter.hlr import HlrAlgebra, HLRPair
from rota_baxter.lhrb import build_lhrb, rb_triple_mc_check
from rota_baxter.operator import RBOperator, check_rb_operator
from bridge.hamiltonian import hamiltonian, hamiltonian_of_derivation, hlr_algebra

logger = logging.getLogger(__name__)


def coadjoint(m: LInftyStructure, n: Optional[int] = None, cap: Optional[int] = None,
              algebra: Optional[PoissonAlgebra] = None) -> Tuple[HLRPair, List[np.ndarray]]:
    """
    The pair (m, ad*) read off H(D_n(m)) in L_HLR(g, g*[n-2])

    Returns:
        (pair, matrices of rho(e_i) on g*[n-2]); the matrices are empty when rho has
        higher components or V carries a differential
    """
    require_linfty(m)
    cap = cap if cap is not None else m.cap
    algebra = algebra if algebra is not None else poisson_algebra_for(m.space, n, cap)
    hlr = hlr_algebra(algebra, cap)
    element = hamiltonian(double(m.brackets.truncated(cap), algebra), hlr)
    pair = HLRPair.from_element(hlr, element, name=f"({m.name}, ad*)")
    matrices = pair.matrices() if pair.rho.is_strict() and not pair.v_differential else []
    logger.info(f"Coadjoint pair of {m.name} on {hlr.V.name}: rho arities {sorted({len(k) for k in pair.rho.entries})}")
    return pair, matrices


def rmatrix_to_rb(m: LInftyStructure, r: PoissonPoly,
                  pair: Optional[HLRPair] = None) -> Tuple[RBOperator, Dict]:
    """
    T = H(r) as an operator S(g*[n-2][1]) -> g[1], certified against the coadjoint pair

    Raises:
        PreconditionError: r is not an r-infinity matrix for m
    """
    prerequisite = check_rmatrix(m, r)
    if not passed(prerequisite):
        raise PreconditionError("r is not an r-infinity matrix", report=prerequisite)
    pair = pair if pair is not None else coadjoint(m, r.algebra.n, m.cap, r.algebra)[0]
    operator = RBOperator(pair.algebra, hamiltonian(r, pair.algebra), name='H(r)')
    certificate = check_rb_operator(pair, operator)
    certificate['matrix'] = [[str(c) for c in row] for row in operator.matrix()]
    return operator, certificate


def bridge_morphism(lhm: DerivedStructure, lhrb: DerivedStructure, hlr: HlrAlgebra) -> LInftyMorphism:
    """Strict map L_LHM -> L_LHRB: H on both the derivation part and the r-matrix part"""
    components = {}
    for k, (_, x) in enumerate(lhm.l_part):
        components[(k,)] = lhrb.l_element(hamiltonian(x, hlr))
    for k, (_, theta) in enumerate(lhm.h_part):
        components[(lhm.offset + k,)] = lhrb.h_element(hamiltonian(theta, hlr))
    return LInftyMorphism(lhm, lhrb, components, name='H')


def _lie_map_check(samples: Sequence[Tuple[str, PoissonPoly]], hlr: HlrAlgebra) -> Dict:
    residuals = []
    images = [(s, x, hamiltonian(x, hlr)) for s, x in samples]
    for (s1, x1, h1), (s2, x2, h2) in itertools.combinations_with_replacement(images, 2):
        lhs = hamiltonian(poisson_bracket(x1, x2, truncate=True), hlr)
        rhs = derivation_bracket(h1, h2, hlr.cap)
        if lhs != rhs:
            residuals.append({'relation': 'hamiltonian_lie', 'monomial': f"{s1},{s2}",
                              'residual': (lhs - rhs).to_text()})
    return verdict('hamiltonian_lie', residuals, ['hamiltonian_lie'], caps={'max_arity': hlr.cap},
                   samples=len(images))


def _projection_check(samples: Sequence[Tuple[str, PoissonPoly]], hlr: HlrAlgebra) -> Dict:
    """H(P x) = P(H x): the xi-free part goes exactly to the Rota-Baxter block"""
    residuals = []
    for symbol, x in samples:
        lhs = hamiltonian(x.part(p=0), hlr)
        rhs = hamiltonian(x, hlr).filter_terms(hlr.in_rb_block)
        if lhs != rhs:
            residuals.append({'relation': 'hamiltonian_projection', 'monomial': symbol,
                              'residual': (lhs - rhs).to_text()})
    return verdict('hamiltonian_projection', residuals, ['hamiltonian_projection'], caps={'max_arity': hlr.cap})


def _composite_check(m: LInftyStructure, derivations: Sequence[Tuple[str, DerivationRep]],
                     algebra: PoissonAlgebra, hlr: HlrAlgebra) -> Dict:
    residuals = []
    for symbol, derivation in [(m.name, m.brackets.truncated(hlr.cap))] + list(derivations):
        _, result = hamiltonian_of_derivation(derivation, algebra, hlr)
        for entry in result['residuals']:
            residuals.append(dict(entry, monomial=f"{symbol}: {entry.get('monomial', '')}"))
    return verdict('hamiltonian_composite', residuals, ['derivation_part'], caps={'max_arity': hlr.cap},
                   samples=len(derivations) + 1)


def check_bridge_diagram(m: LInftyStructure, n: Optional[int] = None, cap: Optional[int] = None,
                         samples: Optional[Sequence[Tuple[str, PoissonPoly]]] = None,
                         r: Optional[PoissonPoly] = None) -> Dict:
    """
    Commutation of the diagram relating r-infinity matrices and Rota-Baxter operators

    Parts:
        hamiltonian_lie: H{a, b} = [H a, H b] on the samples
        hamiltonian_projection: H P = P H on the samples
        hamiltonian_composite: the g part of H(D_n(Q)) is Q, for m and every elementary Q
        strict_map: H is a strict L-infinity map L_LHM(g) -> L_LHRB(g, g*[n-2])
        mc_transport: with r given, (D_n(m), r) MC in L_LHM maps to an MC element of L_LHRB

    Args:
        samples: polynomials of the truncated Poisson algebra (default: the basis of L_LHM)
    """
    cap = cap if cap is not None else m.cap
    lhm = build_lhm(m.space, n, cap)
    algebra = lhm.vs.algebra
    hlr = hlr_algebra(algebra, cap)
    lhrb = build_lhrb(m.space, hlr.V, cap, algebra=hlr)
    samples = list(samples) if samples is not None else list(lhm.l_part) + list(lhm.h_part)
    samples = [(s, x.rehome(algebra)) for s, x in samples]
    derivations = [(s, undouble(x, cap)) for s, x in lhm.l_part]
    parts = [
        _lie_map_check(samples, hlr),
        _projection_check(samples, hlr),
        _composite_check(m, derivations, algebra, hlr),
    ]
    strict = check_morphism(bridge_morphism(lhm, lhrb, hlr))
    strict['check'] = 'strict_map'
    parts.append(strict)
    if r is not None:
        parts.append(_transport_check(m, r, lhm, lhrb, hlr))
    result = combine('bridge', parts, caps={'max_arity': cap, 'max_weight': algebra.weight_cap},
                     shift=algebra.n)
    logger.info(f"Bridge diagram for {m.name} (n={algebra.n}, cap {cap}): {result['status']}")
    return result


def _transport_check(m: LInftyStructure, r: PoissonPoly, lhm: DerivedStructure, lhrb: DerivedStructure,
                     hlr: HlrAlgebra) -> Dict:
    algebra = lhm.vs.algebra
    try:
        validate_rmatrix(r)
        r = r.rehome(algebra)
    except AlgebraError as e:
        logger.warning(f"No MC transport for {lhm.name}: {e}")
        return verdict('mc_transport', [{'relation': 'mc_transport', 'residual': str(e)}], ['mc_transport'],
                       caps={'max_arity': hlr.cap}, source_mc=False, target_mc=False)
    source = lhm_mc_check(m, r, big=lhm)
    element = hamiltonian(double(m.brackets.truncated(hlr.cap), algebra), hlr)
    pair = HLRPair.from_element(hlr, element, name=f"({m.name}, ad*)")
    operator = RBOperator(pair.algebra, hamiltonian(r, hlr), name='H(r)')
    target = rb_triple_mc_check(pair, operator, big=lhrb)
    residuals = []
    if source['big_mc'] and not target['big_mc']:
        residuals.append({'relation': 'mc_transport',
                          'residual': f"MC in {lhm.name} but its image is not MC in {lhrb.name}"})
    return verdict('mc_transport', residuals, ['mc_transport'], caps={'max_arity': hlr.cap},
                   source_mc=source['big_mc'], target_mc=target['big_mc'])
