"""
Check Verdicts
Status dictionaries returned by every mathematical check
"""

from typing import Any, Dict, List, Optional

from config.config import Config

PASS = 'pass'
FAIL = 'fail'


def verdict(check: str, residuals: List[Dict[str, Any]], checked: List[str],
            caps: Optional[Dict[str, int]] = None, **extra) -> Dict[str, Any]:
    """
    Assemble the status dict of one check

    Args:
        check: name of the check
        residuals: nonzero residual entries, in deterministic order
        checked: relation classes that were verified
        caps: caps the verdict is exact up to
        extra: check-specific fields

    Returns:
        Dict with 'status' pass when no residual was found
    """
    limit = Config.REPORT['residual_limit']
    result = {
        'check': check,
        'status': FAIL if residuals else PASS,
        'checked': list(checked),
        'residual_count': len(residuals),
        'residuals': residuals[:limit],
    }
    if caps is not None:
        result['caps'] = dict(caps)
    result.update(extra)
    return result


def passed(result: Dict[str, Any]) -> bool:
    return result.get('status') == PASS


def combine(check: str, parts: List[Dict[str, Any]], **extra) -> Dict[str, Any]:
    """Merge sub-verdicts; fails when any part fails"""
    residuals = []
    checked = []
    for part in parts:
        checked.append(part['check'])
        for entry in part.get('residuals', []):
            residuals.append(dict(entry, source=part['check']))
    return verdict(check, residuals, checked, parts=parts, **extra)
