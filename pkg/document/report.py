"""
Run Reports
Text and JSON rendering of check results, stamped with the convention sheet hash
"""

import hashlib
import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from config.config import Config
from graded.space import format_fraction
from graded.verdict import FAIL, PASS

logger = logging.getLogger(__name__)

ERROR = 'error'

CONVENTION_SHEET = """\
Sign and truncation conventions, version 1

1. Scalars are exact rationals. Coefficients are written p/q in lowest terms.
2. Koszul sign: swapping homogeneous a and b costs (-1)^(|a||b|). A monomial with
   a repeated odd factor is zero.
3. Multibrackets act on the shifted space g[1], where deg(x[1]) = deg(x) - 1.
   Every bracket m_k: S^k(g[1]) -> g[1] has degree +1. A document line
   "x1 ... xk -> y = c" sets the y coefficient of m_k(x1, ..., xk) to c.
4. A dgla (g, d, [,]) becomes m_1(x) = -dx and m_2(x, y) = (-1)^|x| [x, y].
5. The bracket of multibracket families is the graded commutator of the
   composition (D1 o D2)_n = sum over unshuffles of D1(D2(...), ...).
   The generalized Jacobi relations are m o m = 0.
6. Components above the arity cap N are dropped. They form an ideal, so every
   verdict is exact up to arity N.
7. Maurer-Cartan: sum over k of (1/k!) m_k(x, ..., x) = 0 for x of degree 0 in g[1].
8. V-structures use the right adjoint ad_h x = [x, h]. Derived brackets are
   P[...[d h_1, h_2]..., h_k]. The right gauge action is
   x * h = x + sum over n of (1/n!)(ad_h^n x + ad_h^(n-1) d h).
9. A representation rho: g -> gl(V) sends words of g[1] to elementary maps.
   The line "x1 ... xk ; v -> w = c" sets the (w, v) entry of rho_k(x1, ..., xk).
   With no x, it sets the w coefficient of d_V(v).
10. A Rota-Baxter operator T_k: S^k(V[1]) -> g[1] has degree 0. It passes when
    P(e^(ad_T)(m + rho)) = 0.
11. The n-shifted Poisson algebra has generators xi_a = e_a* of degree
    -deg(e_a[1]) and v_a = e_a of degree deg(e_a[1]) + n. The pairing is
    {xi_a, v_a} = 1. The bracket has degree -n.
12. The double D_n maps the term (x_a1 ... x_ak -> c e_j) to
    c/mu! v_j xi_ak ... xi_a1, where mu! is the symmetry factor of the inputs.
13. An r-matrix line "x1 ... xk = c" is the polynomial c v_1 ... v_k of degree 0.
    It passes when P(e^(ad_r) D_n(m)) = 0, with P keeping the xi-free terms.
14. The weight of a Poisson monomial is its number of generators. Monomials
    above the weight cap W are dropped, and W is at least N + 1.
"""


def convention_hash() -> str:
    return hashlib.sha256(CONVENTION_SHEET.encode('utf-8')).hexdigest()


def build_report(command: str, subject: str, result: Optional[Dict[str, Any]], caps: Dict[str, Any],
                 error: Optional[str] = None, **extra) -> Dict[str, Any]:
    """
    Wrap a check result into the report of one run

    Args:
        command: the CLI verb, e.g. 'check linfty'
        subject: document name
        result: status dict of the check, None when the run failed on input
        caps: effective caps of the run
        error: input or cap error message
    """
    report = {
        'command': command,
        'subject': subject,
        'verdict': ERROR if error is not None else result['status'],
        'caps': dict(caps),
        'convention_hash': convention_hash(),
        'convention_version': Config.REPORT['convention_version'],
    }
    if error is not None:
        report['error'] = error
    if result is not None:
        report['result'] = result
    report.update(extra)
    return report


def exit_code(report: Dict[str, Any]) -> int:
    return {PASS: 0, FAIL: 1}.get(report['verdict'], 2)


def _encode(value: Any):
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, np.ndarray):
        return [[_encode(c) for c in row] if isinstance(row, np.ndarray) else _encode(row) for row in value]
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, np.integer):
        return int(value)
    raise TypeError(f"Cannot encode {type(value).__name__} in a report")


def to_json(report: Dict[str, Any]) -> str:
    """Deterministic JSON: sorted keys, rationals as p/q strings"""
    return json.dumps(report, sort_keys=True, indent=2, default=_encode) + "\n"


def _result_lines(result: Dict[str, Any], depth: int) -> List[str]:
    pad = "  " * depth
    lines = [f"{pad}{result['check']}: {result['status'].upper()}"]
    if result.get('checked'):
        lines.append(f"{pad}  checked: {', '.join(str(c) for c in result['checked'])}")
    parts = result.get('parts')
    if parts:
        for part in parts:
            lines.extend(_result_lines(part, depth + 1))
        return lines
    for entry in result.get('residuals', []):
        fields = [str(entry[key]) for key in ('relation', 'monomial') if entry.get(key)]
        residual = str(entry.get('residual', '')).replace("\n", "; ")
        lines.append(f"{pad}  residual [{' '.join(fields)}]: {residual}")
    hidden = result.get('residual_count', 0) - len(result.get('residuals', []))
    if hidden > 0:
        lines.append(f"{pad}  ... {hidden} more residuals")
    return lines


def to_text(report: Dict[str, Any]) -> str:
    caps = " ".join(f"{k}={v}" for k, v in sorted(report['caps'].items()))
    lines = [f"{report['command']} on {report['subject']}: {report['verdict'].upper()}",
             f"caps: {caps}",
             f"conventions: v{report['convention_version']} {report['convention_hash'][:16]}"]
    if 'error' in report:
        lines.append(f"error: {report['error']}")
    if 'result' in report:
        lines.extend(_result_lines(report['result'], 0))
    if 'output' in report:
        lines.append("output:")
        lines.extend(f"  {line}" for line in str(report['output']).splitlines())
    return "\n".join(lines) + "\n"


def render(report: Dict[str, Any], output_format: Optional[str] = None) -> str:
    output_format = output_format or Config.REPORT['default_format']
    if output_format == 'json':
        return to_json(report)
    return to_text(report)
