#!/usr/bin/env python3
"""
L-infinity Verifier Service
Command-line entry point: exact checks, derivations and conversions on algebra documents
"""

import argparse
import logging
import os
import sys
import time
from logging.handlers import RotatingFileHandler
from typing import Callable, Dict, List, Optional, Tuple

import psutil

from config.config import Config
from graded.errors import AlgebraError, PreconditionError
from graded.space import format_fraction
from graded.verdict import combine, passed, verdict
from linfty.morphism import check_morphism
from linfty.structure import check_linfty
from rota_baxter.classical import classical_rb_residual, pair_constants
from rota_baxter.operator import RBOperator, check_rb_operator
from poisson.rmatrix import bialgebra_projections, check_rmatrix, triangular_bialgebra
from poisson.schouten import require_linfty, schouten_structure
from bridge.diagram import check_bridge_diagram, rmatrix_to_rb
from document.document import AlgebraDocument, load
from document.report import build_report, exit_code, render

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

Outcome = Tuple[Dict, Dict]


def setup_logging(level: Optional[str] = None):
    """Log to stderr and, when its directory is writable, to a rotating file"""
    level = (level or Config.LOGGING['level']).upper()
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    problem = None
    path = Config.LOGGING['file_path']
    if path:
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            handlers.append(RotatingFileHandler(path, maxBytes=Config.LOGGING['max_size_mb'] * 1024 * 1024,
                                                backupCount=Config.LOGGING['backup_count']))
        except OSError as e:
            problem = e
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT,
                        handlers=handlers, force=True)
    if problem is not None:
        logger.warning(f"File logging disabled: {problem}")


def log_resources(started: float):
    if not Config.LOGGING['log_resources']:
        return
    try:
        process = psutil.Process()
        memory_mb = process.memory_info().rss / 1024 / 1024
        cpu = process.cpu_times()
        logger.info(f"SYSTEM: Memory={memory_mb:.1f}MB, CPU={cpu.user + cpu.system:.2f}s, "
                    f"wall={time.time() - started:.2f}s")
    except psutil.Error as e:
        logger.warning(f"Could not get system info: {e}")


class Run:
    """Effective settings of one invocation: document caps overridden by flags"""

    def __init__(self, document: AlgebraDocument, args: argparse.Namespace):
        self.document = document
        self.cap = document.cap(args.max_arity)
        self.weight_cap = document.weight_cap(args.max_weight)
        self.shift = document.poisson_shift(args.shift)

    @property
    def caps(self) -> Dict[str, int]:
        weight = self.weight_cap if self.weight_cap is not None else max(Config.CAPS['max_weight'], self.cap + 1)
        return {'max_arity': self.cap, 'max_weight': weight, 'shift': self.shift}

    def structure(self):
        return self.document.structure(self.cap)

    def rmatrix(self):
        return self.document.rmatrix(n=self.shift, cap=self.cap, weight_cap=self.weight_cap)


def check_linfty_command(run: Run) -> Outcome:
    return check_linfty(run.structure()), {}


def check_morphism_command(run: Run) -> Outcome:
    morphism = run.document.morphism(run.cap)
    for structure in (morphism.source, morphism.target):
        require_linfty(structure)
    return check_morphism(morphism), {}


def _classical_part(pair, operator: RBOperator) -> Optional[Dict]:
    """The classical identity on named basis pairs, when T is an arity-one operator of an ordinary pair"""
    if operator.arities() not in ([], [1]):
        return None
    try:
        constants, action = pair_constants(pair)
    except AlgebraError:
        return None
    symbols = pair.V.symbols
    entries = []
    for entry in classical_rb_residual(constants, action, operator.matrix()):
        u, v = entry['monomial']
        entries.append({'relation': 'classical_rb', 'monomial': f"{symbols[u]},{symbols[v]}",
                        'residual': " ".join(format_fraction(c) for c in entry['residual'])})
    return verdict('classical_rb', entries, ['basis pairs'], caps={'max_arity': 1})


def check_rb_command(run: Run) -> Outcome:
    pair = run.document.pair(run.cap)
    prerequisite = pair.mc_check()
    if not passed(prerequisite):
        raise PreconditionError(f"{pair.name} is not a Lie-representation pair", report=prerequisite)
    operator = run.document.rb_operator(pair.algebra)
    parts = [check_rb_operator(pair, operator)]
    classical = _classical_part(pair, operator)
    if classical is not None:
        parts.append(classical)
    return combine('rb', parts, caps={'max_arity': run.cap}), {'output': operator.to_text()}


def check_rmatrix_command(run: Run) -> Outcome:
    m = run.structure()
    require_linfty(m)
    return check_rmatrix(m, run.rmatrix()), {}


def check_bridge_command(run: Run) -> Outcome:
    m = run.structure()
    require_linfty(m)
    r = run.rmatrix() if run.document.rmatrix is not None else None
    return check_bridge_diagram(m, run.shift, run.cap, r=r), {}


def derive_schouten_command(run: Run) -> Outcome:
    schouten = schouten_structure(run.structure(), run.shift, cap=run.cap, weight_cap=run.weight_cap)
    result = check_linfty(schouten)
    return result, {'output': schouten.brackets.to_text(), 'dimension': schouten.space.dim}


def make_bialgebra_command(run: Run) -> Outcome:
    m = run.structure()
    rm, report = triangular_bialgebra(m, run.rmatrix())
    g_part, co_part = bialgebra_projections(rm, run.cap)
    projections = []
    for label, structure in (('algebra_projection', g_part), ('coalgebra_projection', co_part)):
        part = check_linfty(structure)
        part['check'] = label
        projections.append(part)
    result = combine('bialgebra', [report] + projections, caps=report['caps'], shift=run.shift)
    return result, {'output': rm.to_text()}


def convert_rmatrix_to_rb_command(run: Run) -> Outcome:
    m = run.structure()
    require_linfty(m)
    operator, certificate = rmatrix_to_rb(m, run.rmatrix())
    space = operator.algebra.space
    lines = [f"{' '.join(space.symbols[i] for i in monomial)} -> {space.symbols[output]} = {format_fraction(c)}"
             for monomial, output, c in operator.rep.terms()]
    return certificate, {'output': "\n".join(["[operator]"] + lines)}


COMMANDS: Dict[str, Callable[[Run], Outcome]] = {
    'check linfty': check_linfty_command,
    'check morphism': check_morphism_command,
    'check rb': check_rb_command,
    'check rmatrix': check_rmatrix_command,
    'check bridge': check_bridge_command,
    'derive schouten': derive_schouten_command,
    'make bialgebra': make_bialgebra_command,
    'convert rmatrix-to-rb': convert_rmatrix_to_rb_command,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact verifier for L-infinity algebras, Rota-Baxter operators and r-matrices")
    parser.add_argument('verb', choices=sorted({c.split()[0] for c in COMMANDS}))
    parser.add_argument('object', help="what to check, derive, make or convert, e.g. 'linfty'")
    parser.add_argument('document', help="algebra document path, '-' for standard input")
    parser.add_argument('--format', choices=['text', 'json'], default=Config.REPORT['default_format'])
    parser.add_argument('--max-arity', type=int, default=None, help="arity cap N (default: document, then config)")
    parser.add_argument('--max-weight', type=int, default=None, help="weight cap W for Poisson computations")
    parser.add_argument('--shift', type=int, default=None, help="shift n of the Poisson algebra")
    parser.add_argument('--log-level', default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument('--output', default='-', help="report path, '-' for standard output")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and write its report; returns the exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    command = f"{args.verb} {args.object}"
    if command not in COMMANDS:
        parser.error(f"unknown command '{command}'; choose from {', '.join(COMMANDS)}")
    setup_logging(args.log_level)
    started = time.time()
    subject = args.document
    caps = {'max_arity': args.max_arity or Config.CAPS['max_arity']}
    try:
        for flag in ('max_arity', 'max_weight'):
            value = getattr(args, flag)
            if value is not None and value < 1:
                raise AlgebraError(f"--{flag.replace('_', '-')} must be positive")
        document = load(args.document)
        subject = document.name
        context = Run(document, args)
        caps = context.caps
        logger.info(f"Running {command} on {subject} with caps {caps}")
        result, extra = COMMANDS[command](context)
        report = build_report(command, subject, result, caps, **extra)
    except PreconditionError as e:
        logger.error(f"Failed to run {command}: {e}")
        report = build_report(command, subject, None, caps, error=str(e), precondition=e.report)
    except AlgebraError as e:
        logger.error(f"Failed to run {command}: {e}")
        report = build_report(command, subject, None, caps, error=str(e))
    text = render(report, args.format)
    if args.output == '-':
        sys.stdout.write(text)
    else:
        with open(args.output, 'w', encoding='utf-8') as handle:
            handle.write(text)
    code = exit_code(report)
    logger.info(f"{command} on {subject}: {report['verdict']} (exit {code})")
    log_resources(started)
    return code


def main():
    """Run the verifier from the command line"""
    sys.exit(run())


if __name__ == "__main__":
    main()
