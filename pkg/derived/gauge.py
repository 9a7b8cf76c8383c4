"""
Gauge Action
Adjoint exponentials, the right gauge action and VMC pairs
"""

import logging
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Tuple

from config.config import Config
from graded.errors import PreconditionError, TruncationError
from graded.verdict import verdict
from derived.vstructure import VStructureDgla

logger = logging.getLogger(__name__)


def _series_limit() -> int:
    return Config.CAPS['max_series_terms']


def ad_exponential(vs: VStructureDgla, h, x) -> Tuple[object, int]:
    """
    e^(ad_h) x = sum_n (1/n!) [...[x, h]..., h] as a finite sum

    Returns:
        (value, number of nonzero iterated brackets used)
    """
    result = x
    term = x
    n = 0
    while True:
        n += 1
        if n > _series_limit():
            raise TruncationError(f"ad_h is not nilpotent within {_series_limit()} steps on {vs.name}")
        term = vs.ad(term, h)
        if term.is_zero():
            return result, n - 1
        result = result + term * Fraction(1, factorial(n))


def mc_residual_dgla(vs: VStructureDgla, x):
    """dx + 1/2 [x, x]"""
    return vs.differential(x) + vs.bracket(x, x) * Fraction(1, 2)


def gauge(vs: VStructureDgla, x, h):
    """
    Right gauge action x * h = x + sum_{n>=1} (1/n!) (ad_h^n x + ad_h^(n-1) dh)

    Args:
        vs: admissible V-structure (ad_h must be nilpotent)
        x: degree-1 element of L
        h: degree-0 element of h
    """
    result = x
    ad_x = x
    ad_dh = vs.differential(h)
    n = 0
    while not (ad_x.is_zero() and ad_dh.is_zero()):
        n += 1
        if n > _series_limit():
            raise TruncationError(f"Gauge series on {vs.name} did not terminate within {_series_limit()} terms")
        if not ad_x.is_zero():
            ad_x = vs.ad(ad_x, h)
        result = result + (ad_x + ad_dh) * Fraction(1, factorial(n))
        ad_dh = vs.ad(ad_dh, h)
    return result


def vmc_check(vs: VStructureDgla, x, h, big=None) -> Dict:
    """
    (x, h) is VMC: x is MC in L and P(x * h) = 0

    When the big algebra L' + h[-1] is given, the MC residual of (x[1], h)
    there is computed independently and the two verdicts are compared.
    """
    residuals = []
    mc = mc_residual_dgla(vs, x)
    if not mc.is_zero():
        residuals.append({'relation': 'mc', 'residual': mc.to_text()})
    moved = gauge(vs, x, h)
    projected = vs.project(moved)
    if not projected.is_zero():
        residuals.append({'relation': 'projection', 'residual': projected.to_text()})
    if mc.is_zero():
        preserved = mc_residual_dgla(vs, moved)
        if not preserved.is_zero():
            residuals.append({'relation': 'gauge_mc', 'residual': preserved.to_text()})
    is_vmc = mc.is_zero() and projected.is_zero()
    extra = {'vmc': is_vmc}
    if big is not None:
        from derived.higher_brackets import big_mc_residual
        residual = big_mc_residual(big, x, h)
        big_mc = residual.is_zero()
        extra['big_mc'] = big_mc
        extra['equivalent'] = big_mc == is_vmc
        if big_mc != is_vmc:
            residuals.append({'relation': 'equivalence',
                              'residual': f"big algebra MC {big_mc}, VMC {is_vmc}: {residual.to_text()}"})
    checked = ['mc', 'projection', 'gauge_mc']
    if big is not None:
        checked.append('equivalence')
    return verdict('vmc', residuals, checked, caps={'max_weight': vs.weight_cap}, **extra)


def map_j(vs: VStructureDgla, x, h):
    """MC(j)(x[1], h) = x * h, an MC element of ker P"""
    result = vmc_check(vs, x, h)
    if result['status'] != 'pass':
        raise PreconditionError("map j needs a VMC pair", report=result)
    return gauge(vs, x, h)


def map_i(vs: VStructureDgla, h):
    """MC(i)(h) = 0 * h = sum_{n>=1} (1/n!) ad_h^(n-1) dh"""
    image = gauge(vs, vs.zero(), h)
    residual = vs.project(image)
    if not residual.is_zero():
        raise PreconditionError(f"h is not MC in h[-1]: residual {residual.to_text()}",
                                report={'residual': residual.to_text()})
    return image
