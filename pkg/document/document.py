"""
Algebra Documents
The sectioned plain-text format for algebras, representations, operators,
r-matrices and morphisms, with its parser, canonical serializer and builders
"""

import logging
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from config.config import Config
from graded.errors import AlgebraError, DocumentError
from graded.space import Element, GradedSpace, format_fraction, to_fraction
from brackets.derivation import DerivationRep
from linfty.dgla import gl_structure
from linfty.morphism import LInftyMorphism
from linfty.structure import LInftyStructure, dgla_structure
from rota_baxter.hlr import HLRPair, HlrAlgebra
from rota_baxter.operator import RBOperator
from poisson.algebra import PoissonAlgebra, PoissonPoly, poisson_algebra_for

logger = logging.getLogger(__name__)

Basis = List[Tuple[str, int]]
Table = Dict[Tuple[str, ...], Dict[str, Fraction]]
RepTable = Dict[Tuple[str, ...], Dict[Tuple[str, str], Fraction]]

SECTION_ORDER = ('format', 'space g', 'space V', 'space target', 'caps', 'brackets', 'representation',
                 'operator', 'rmatrix', 'morphism', 'target')
CAP_KEYS = ('max_arity', 'max_weight')

_SYMBOL = re.compile(r"^[^\s=;#\[\]]+$")


@dataclass
class AlgebraDocument:
    """
    Parsed, canonical contents of an algebra document

    Tables are keyed by normalized input words of symbols (Koszul signs absorbed
    into the coefficients, zero coefficients dropped). Optional sections are None
    when absent and empty when present without entries.
    """
    name: str
    g: Basis
    version: int = 1
    V: Optional[Basis] = None
    target: Optional[Basis] = None
    caps: Dict[str, int] = field(default_factory=dict)
    brackets: Table = field(default_factory=dict)
    representation: Optional[RepTable] = None
    operator: Optional[Table] = None
    shift: Optional[int] = None
    rmatrix: Optional[Dict[Tuple[str, ...], Fraction]] = None
    morphism: Optional[Table] = None
    target_brackets: Optional[Table] = None

    # Spaces

    def space(self) -> GradedSpace:
        return GradedSpace(self.name, self.g)

    def v_space(self) -> GradedSpace:
        self._require('V', 'space V')
        return GradedSpace('V', self.V)

    def target_space(self) -> GradedSpace:
        self._require('target', 'space target')
        return GradedSpace(f"{self.name}'", self.target)

    def cap(self, override: Optional[int] = None) -> int:
        if override is not None:
            return override
        return self.caps.get('max_arity', Config.CAPS['max_arity'])

    def weight_cap(self, override: Optional[int] = None) -> Optional[int]:
        if override is not None:
            return override
        return self.caps.get('max_weight')

    def poisson_shift(self, override: Optional[int] = None) -> int:
        if override is not None:
            return override
        return self.shift if self.shift is not None else Config.POISSON['default_shift']

    def _require(self, attribute: str, section: str):
        if getattr(self, attribute) is None:
            raise DocumentError(f"Document {self.name} has no [{section}] section", field=section)

    # Builders

    def structure(self, cap: Optional[int] = None) -> LInftyStructure:
        """The L-infinity algebra of [brackets] on g"""
        return _structure(self.space(), self.brackets, self.cap(cap), self.name)

    def target_structure(self, cap: Optional[int] = None) -> LInftyStructure:
        self._require('target_brackets', 'target')
        return _structure(self.target_space(), self.target_brackets, self.cap(cap), f"{self.name}'")

    def pair(self, cap: Optional[int] = None) -> HLRPair:
        """(m, rho) from [brackets] and [representation]; arity-0 lines give d_V"""
        self._require('representation', 'representation')
        structure = self.structure(cap)
        g, V = structure.space, self.v_space()
        n = V.dim
        v_differential: Dict[int, Dict[int, Fraction]] = {}
        gl_parts: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
        for word, entries in self.representation.items():
            for (v, w), c in entries.items():
                j, i = V.index(v), V.index(w)
                if word:
                    key = tuple(g.index(s) for s in word)
                    gl_parts.setdefault(key, {})[i * n + j] = c
                else:
                    v_differential.setdefault(j, {})[i] = c
        gl = gl_structure(V, {j: Element(V, t) for j, t in v_differential.items()})
        target = dgla_structure(gl, structure.cap)
        components = {word: Element(target.shifted, t) for word, t in gl_parts.items()}
        rho = LInftyMorphism(structure, target, components, cap=structure.cap, name=f"rho({self.name})")
        return HLRPair(structure, rho, structure.cap, name=f"({self.name}, {V.name})")

    def rb_operator(self, algebra: HlrAlgebra, name: str = 'T') -> RBOperator:
        """T from [operator]: words of V symbols mapped into g"""
        self._require('operator', 'operator')
        g, V = algebra.g, self.v_space()
        components = {}
        for word, values in self.operator.items():
            key = tuple(V.index(s) for s in word)
            components[key] = Element(g, {g.index(s): c for s, c in values.items()})
        return RBOperator.from_components(algebra, components, name)

    def rmatrix(self, algebra: Optional[PoissonAlgebra] = None, n: Optional[int] = None,
                cap: Optional[int] = None, weight_cap: Optional[int] = None) -> PoissonPoly:
        """r from [rmatrix] as a polynomial in the v generators"""
        self._require('rmatrix', 'rmatrix')
        g = self.space()
        if algebra is None:
            algebra = poisson_algebra_for(g, self.poisson_shift(n), self.cap(cap), self.weight_cap(weight_cap))
        return algebra.contravariant({tuple(g.index(s) for s in word): c for word, c in self.rmatrix.items()})

    def morphism(self, cap: Optional[int] = None) -> LInftyMorphism:
        """f from [morphism] between [brackets] on g and [target] on the target space"""
        self._require('morphism', 'morphism')
        source = self.structure(cap)
        target = self.target_structure(cap)
        components = {}
        for word, values in self.morphism.items():
            key = tuple(source.space.index(s) for s in word)
            components[key] = Element(target.shifted, {target.space.index(s): c for s, c in values.items()})
        return LInftyMorphism(source, target, components, cap=source.cap, name=f"f({self.name})")


def _structure(space: GradedSpace, table: Table, cap: int, name: str) -> LInftyStructure:
    shifted = space.shift(1)
    terms = []
    for word, values in table.items():
        for output, c in values.items():
            terms.append((tuple(space.index(s) for s in word), space.index(output), c))
    return LInftyStructure(space, DerivationRep.from_terms(shifted, terms, cap), cap=cap, name=name)


# Parsing


class _Parser:
    """Line-oriented reader; every error carries the line number and section"""

    def __init__(self, text: str):
        self.text = text
        self.sections: Dict[str, List[Tuple[int, str]]] = {}
        self.headers: Dict[str, int] = {}

    def split_sections(self):
        current = None
        for number, raw in enumerate(self.text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if line.startswith('['):
                if not line.endswith(']'):
                    raise DocumentError(f"Malformed section header '{line}'", number)
                current = ' '.join(line[1:-1].split())
                if current not in SECTION_ORDER:
                    raise DocumentError(f"Unknown section [{current}]", number, current)
                if current in self.sections:
                    raise DocumentError(f"Section [{current}] appears twice", number, current)
                self.sections[current] = []
                self.headers[current] = number
                continue
            if current is None:
                raise DocumentError(f"Entry '{line}' before the first section", number)
            self.sections[current].append((number, line))
        for required in ('format', 'space g'):
            if required not in self.sections:
                raise DocumentError(f"Missing section [{required}]", field=required)

    @staticmethod
    def assignment(number: int, line: str, section: str) -> Tuple[str, str]:
        if '=' not in line:
            raise DocumentError(f"Expected 'key = value', found '{line}'", number, section)
        key, value = line.rsplit('=', 1)
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise DocumentError(f"Empty key or value in '{line}'", number, section)
        return key, value

    @staticmethod
    def integer(value: str, number: int, section: str) -> int:
        try:
            return int(value)
        except ValueError:
            raise DocumentError(f"Expected an integer, found '{value}'", number, section)

    @staticmethod
    def rational(value: str, number: int, section: str) -> Fraction:
        try:
            return to_fraction(value)
        except AlgebraError:
            raise DocumentError(f"Malformed rational '{value}'", number, section)

    def basis(self, section: str) -> Optional[Basis]:
        if section not in self.sections:
            return None
        basis: Basis = []
        seen = set()
        for number, line in self.sections[section]:
            symbol, value = self.assignment(number, line, section)
            if not _SYMBOL.match(symbol) or symbol == '->':
                raise DocumentError(f"Invalid basis symbol '{symbol}'", number, section)
            if symbol in seen:
                raise DocumentError(f"Duplicate basis symbol '{symbol}'", number, section)
            seen.add(symbol)
            basis.append((symbol, self.integer(value, number, section)))
        return basis


def _resolve(space: GradedSpace, symbols: Sequence[str], number: int, section: str) -> Tuple[int, ...]:
    indices = []
    for s in symbols:
        if s not in space:
            raise DocumentError(f"Unknown symbol '{s}' (space {space.name})", number, section)
        indices.append(space.index(s))
    return tuple(indices)


def _accumulate(table: Dict, word: Tuple[int, ...], key, c: Fraction):
    bucket = table.setdefault(word, {})
    bucket[key] = bucket.get(key, 0) + c


def _freeze(table: Dict, word_symbols, key_symbols) -> Dict:
    """Drop zero coefficients and rewrite index keys as symbols"""
    result = {}
    for word, bucket in table.items():
        kept = {key_symbols(k): c for k, c in bucket.items() if c}
        if kept:
            result[word_symbols(word)] = kept
    return result


def _parse_table(parser: _Parser, section: str, inputs: GradedSpace, outputs: GradedSpace,
                 degree: int) -> Optional[Table]:
    """Lines 'x1 ... xk -> y = c' with words normalized in the shifted inputs"""
    if section not in parser.sections:
        return None
    shifted_in, shifted_out = inputs.shift(1), outputs.shift(1)
    table: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
    for number, line in parser.sections[section]:
        key, value = parser.assignment(number, line, section)
        if '->' not in key:
            raise DocumentError(f"Expected 'inputs -> output', found '{key}'", number, section)
        left, right = key.split('->', 1)
        words, targets = left.split(), right.split()
        if not words:
            raise DocumentError("An entry needs at least one input", number, section)
        if len(targets) != 1:
            raise DocumentError(f"Expected one output symbol, found '{right.strip()}'", number, section)
        word = _resolve(inputs, words, number, section)
        output = _resolve(outputs, targets, number, section)[0]
        found = shifted_out.degrees[output] - sum(shifted_in.degrees[i] for i in word)
        if found != degree:
            raise DocumentError(f"Entry has degree {found} on the shifted spaces, expected {degree}",
                                number, section)
        c = parser.rational(value, number, section)
        monomial, sign = shifted_in.normalize(word)
        if sign:
            _accumulate(table, monomial, output, sign * c)
    return _freeze(table, lambda w: tuple(inputs.symbols[i] for i in w), lambda k: outputs.symbols[k])


def _parse_representation(parser: _Parser, g: GradedSpace, V: Optional[GradedSpace]) -> Optional[RepTable]:
    """Lines 'x1 ... xk ; v -> w = c': the (w, v) entry of rho_k(x1, ..., xk); k = 0 is d_V"""
    section = 'representation'
    if section not in parser.sections:
        return None
    if V is None:
        raise DocumentError("[representation] needs a [space V] section", parser.headers[section], section)
    shifted = g.shift(1)
    table: Dict[Tuple[int, ...], Dict[Tuple[int, int], Fraction]] = {}
    for number, line in parser.sections[section]:
        key, value = parser.assignment(number, line, section)
        if ';' not in key or '->' not in key:
            raise DocumentError(f"Expected 'inputs ; v -> w', found '{key}'", number, section)
        left, right = key.split(';', 1)
        source, target = right.split('->', 1)
        v = _resolve(V, source.split(), number, section)
        w = _resolve(V, target.split(), number, section)
        if len(v) != 1 or len(w) != 1:
            raise DocumentError("Expected one vector on each side of '->'", number, section)
        word = _resolve(g, left.split(), number, section)
        found = V.degrees[w[0]] - V.degrees[v[0]] - 1 - sum(shifted.degrees[i] for i in word)
        if found != 0:
            raise DocumentError(f"Representation entry has degree {found} on the shifted spaces, expected 0",
                                number, section)
        c = parser.rational(value, number, section)
        monomial, sign = shifted.normalize(word) if word else ((), 1)
        if sign:
            _accumulate(table, monomial, (v[0], w[0]), sign * c)
    return _freeze(table, lambda w: tuple(g.symbols[i] for i in w),
                   lambda k: (V.symbols[k[0]], V.symbols[k[1]]))


def _parse_rmatrix(parser: _Parser, g: GradedSpace) -> Tuple[Optional[int], Optional[Dict[Tuple[str, ...], Fraction]]]:
    """'shift = n' and lines 'x1 ... xk = c' read in S(g[1-n])"""
    section = 'rmatrix'
    if section not in parser.sections:
        return None, None
    shift = None
    raw = []
    for number, line in parser.sections[section]:
        key, value = parser.assignment(number, line, section)
        if key == 'shift':
            shift = parser.integer(value, number, section)
            continue
        word = _resolve(g, key.split(), number, section)
        raw.append((number, word, parser.rational(value, number, section)))
    n = shift if shift is not None else Config.POISSON['default_shift']
    generators = g.shift(1 - n)
    table: Dict[Tuple[int, ...], Fraction] = {}
    for number, word, c in raw:
        if len(word) < 2:
            raise DocumentError("r-matrix terms need at least two factors", number, section)
        monomial, sign = generators.normalize(word)
        if sign:
            table[monomial] = table.get(monomial, 0) + sign * c
    return shift, {tuple(g.symbols[i] for i in m): c for m, c in table.items() if c}


def parse(text: str) -> AlgebraDocument:
    """
    Parse and canonicalize an algebra document

    Raises:
        DocumentError: unknown symbol or section, malformed rational, duplicate
            basis symbol, missing section, or an entry of the wrong degree
    """
    parser = _Parser(text)
    parser.split_sections()
    header = {}
    for number, line in parser.sections['format']:
        key, value = parser.assignment(number, line, 'format')
        if key not in ('version', 'name'):
            raise DocumentError(f"Unknown format field '{key}'", number, 'format')
        header[key] = (number, value)
    if 'name' not in header:
        raise DocumentError("Missing field 'name'", parser.headers['format'], 'format')
    version = Config.DOCUMENTS['format_version']
    if 'version' in header:
        number, value = header['version']
        version = parser.integer(value, number, 'format')
        if version != Config.DOCUMENTS['format_version']:
            raise DocumentError(f"Unsupported format version {version}", number, 'format')
    name = header['name'][1]

    g_basis = parser.basis('space g')
    v_basis = parser.basis('space V')
    target_basis = parser.basis('space target')
    g = GradedSpace(name, g_basis)
    V = GradedSpace('V', v_basis) if v_basis is not None else None
    target = GradedSpace(f"{name}'", target_basis) if target_basis is not None else None

    caps = {}
    for number, line in parser.sections.get('caps', []):
        key, value = parser.assignment(number, line, 'caps')
        if key not in CAP_KEYS:
            raise DocumentError(f"Unknown cap '{key}'", number, 'caps')
        caps[key] = parser.integer(value, number, 'caps')
        if caps[key] < 1:
            raise DocumentError(f"Cap {key} must be positive", number, 'caps')

    for section, space in (('operator', V), ('morphism', target), ('target', target)):
        if section in parser.sections and space is None:
            needed = 'space V' if section == 'operator' else 'space target'
            raise DocumentError(f"[{section}] needs a [{needed}] section", parser.headers[section], section)

    shift, rmatrix = _parse_rmatrix(parser, g)
    document = AlgebraDocument(
        name=name, g=g_basis, version=version, V=v_basis, target=target_basis, caps=caps,
        brackets=_parse_table(parser, 'brackets', g, g, 1) or {},
        representation=_parse_representation(parser, g, V),
        operator=_parse_table(parser, 'operator', V, g, 0) if V is not None else None,
        shift=shift, rmatrix=rmatrix,
        morphism=_parse_table(parser, 'morphism', g, target, 0) if target is not None else None,
        target_brackets=_parse_table(parser, 'target', target, target, 1) if target is not None else None,
    )
    logger.debug(f"Parsed document {name}: sections {sorted(parser.sections)}")
    return document


def load(path: str) -> AlgebraDocument:
    """Parse a document file; '-' reads standard input"""
    if path == '-':
        return parse(sys.stdin.read())
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise DocumentError(f"Cannot read {path}: {e}")
    return parse(text)


# Serialization


def _word_key(space: GradedSpace, word: Sequence[str]) -> Tuple[int, Tuple[int, ...]]:
    return len(word), tuple(space.index(s) for s in word)


def _table_lines(table: Table, inputs: GradedSpace, outputs: GradedSpace) -> List[str]:
    lines = []
    for word in sorted(table, key=lambda w: _word_key(inputs, w)):
        values = table[word]
        for output in sorted(values, key=outputs.index):
            lines.append(f"{' '.join(word)} -> {output} = {format_fraction(values[output])}")
    return lines


def _basis_lines(basis: Basis) -> List[str]:
    return [f"{symbol} = {degree}" for symbol, degree in basis]


def serialize(document: AlgebraDocument) -> str:
    """Canonical text: fixed section order, basis-ordered entries, coefficients as p/q"""
    g = document.space()
    blocks = [('format', [f"version = {document.version}", f"name = {document.name}"]),
              ('space g', _basis_lines(document.g))]
    V = document.v_space() if document.V is not None else None
    target = document.target_space() if document.target is not None else None
    if V is not None:
        blocks.append(('space V', _basis_lines(document.V)))
    if target is not None:
        blocks.append(('space target', _basis_lines(document.target)))
    if document.caps:
        blocks.append(('caps', [f"{key} = {document.caps[key]}" for key in CAP_KEYS if key in document.caps]))
    blocks.append(('brackets', _table_lines(document.brackets, g, g)))
    if document.representation is not None:
        lines = []
        for word in sorted(document.representation, key=lambda w: _word_key(g, w)):
            entries = document.representation[word]
            prefix = f"{' '.join(word)} ; " if word else "; "
            for v, w in sorted(entries, key=lambda k: (V.index(k[0]), V.index(k[1]))):
                lines.append(f"{prefix}{v} -> {w} = {format_fraction(entries[(v, w)])}")
        blocks.append(('representation', lines))
    if document.operator is not None:
        blocks.append(('operator', _table_lines(document.operator, V, g)))
    if document.rmatrix is not None:
        lines = [f"shift = {document.shift}"] if document.shift is not None else []
        for word in sorted(document.rmatrix, key=lambda w: _word_key(g, w)):
            lines.append(f"{' '.join(word)} = {format_fraction(document.rmatrix[word])}")
        blocks.append(('rmatrix', lines))
    if document.morphism is not None:
        blocks.append(('morphism', _table_lines(document.morphism, g, target)))
    if document.target_brackets is not None:
        blocks.append(('target', _table_lines(document.target_brackets, target, target)))
    return "\n\n".join("\n".join([f"[{section}]"] + lines) for section, lines in blocks) + "\n"
