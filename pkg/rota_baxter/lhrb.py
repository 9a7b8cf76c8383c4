"""
Governing Algebra of Rota-Baxter Triples
The L-infinity algebra L_HLR(g, V) + h[-1] whose MC elements are triples (m, rho, T)
"""

import logging
from typing import Dict, Optional

from graded.space import GradedSpace, format_fraction
from graded.verdict import passed, verdict
from linfty.morphism import representation_check
from linfty.structure import check_linfty
from derived.higher_brackets import DerivedStructure, big_mc_residual, check_extension, derived_brackets_big
from derived.vstructure import DerivationDgla
from rota_baxter.hlr import HlrAlgebra, HLRPair
from rota_baxter.operator import RBOperator, check_rb_operator

logger = logging.getLogger(__name__)


def lhrb_vstructure(algebra: HlrAlgebra) -> DerivationDgla:
    """L_HLR with zero differential and the Rota-Baxter block as h"""
    return DerivationDgla(algebra.space, None, algebra.in_rb_block, algebra.rb_weight, cap=algebra.cap,
                          weight_cap=algebra.cap + 1, name=f"HLR({algebra.space.name})", in_l=algebra.in_hlr)


def build_lhrb(g: GradedSpace, V: GradedSpace, cap: Optional[int] = None,
               algebra: Optional[HlrAlgebra] = None) -> DerivedStructure:
    """
    L_HLR(g, V) + h[-1]: the shifted bracket on L_HLR, the mixed products
    P[...[Q, theta_1]..., theta_(k-1)], and nothing else
    """
    algebra = algebra if algebra is not None else HlrAlgebra(g, V, cap)
    vs = lhrb_vstructure(algebra)
    big = derived_brackets_big(vs, name=f"L_LHRB({g.name}, {V.name})")
    logger.info(f"Built {big.name}: dim {big.offset} + {len(big.h_part)}")
    return big


def rb_triple_mc_check(pair: HLRPair, operator: RBOperator, big: Optional[DerivedStructure] = None) -> Dict:
    """
    (Phi[1], T) is MC in L_LHRB exactly when m is L-infinity, rho is a
    representation and T is a Rota-Baxter operator; both sides are computed
    """
    algebra = pair.algebra
    big = big if big is not None else build_lhrb(algebra.g, algebra.V, algebra.cap, algebra)
    residual = big_mc_residual(big, pair.element, operator.rep)
    big_mc = residual.is_zero()
    residuals = [dict(entry, relation='big_mc') for entry in _element_entries(big, residual)]
    parts = [check_linfty(pair.structure), representation_check(pair.rho)]
    if all(passed(p) for p in parts):
        parts.append(check_rb_operator(pair, operator))
    triple = all(passed(p) for p in parts) and len(parts) == 3
    for part in parts:
        for entry in part['residuals']:
            residuals.append(dict(entry, source=part['check']))
    if big_mc != triple:
        residuals.append({'relation': 'equivalence',
                          'residual': f"MC in {big.name}: {big_mc}, Rota-Baxter triple: {triple}"})
    return verdict('rb_triple', residuals, ['big_mc', 'linfty', 'representation', 'rb_operator', 'equivalence'],
                   caps={'max_arity': algebra.cap}, big_mc=big_mc, triple=triple, equivalent=big_mc == triple)


def _element_entries(big: DerivedStructure, residual):
    return [{'monomial': big.shifted.symbols[i], 'residual': format_fraction(c)} for i, c in residual.items()]


def lhrb_extension_check(algebra: HlrAlgebra, big: Optional[DerivedStructure] = None) -> Dict:
    """h[-1] -> L_LHRB -> L_HLR[1]: strict projection, and h[-1] carries the trivial structure"""
    vs = big.vs if big is not None else lhrb_vstructure(algebra)
    big = big if big is not None else derived_brackets_big(vs)
    result = check_extension(vs, big)
    result['check'] = 'lhrb_extension'
    return result
