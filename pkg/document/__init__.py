"""
Algebra documents and run reports
"""

from .document import AlgebraDocument, parse, serialize, load
from .report import CONVENTION_SHEET, convention_hash, build_report, exit_code, render, to_json, to_text

__all__ = [
    'AlgebraDocument', 'parse', 'serialize', 'load',
    'CONVENTION_SHEET', 'convention_hash', 'build_report', 'exit_code', 'render', 'to_json', 'to_text',
]
