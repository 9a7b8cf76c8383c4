"""
L-infinity Structures
Degree +1 multibracket families on g[1], the generalized Jacobi check and filtrations
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from graded.errors import AlgebraError, TruncationError
from graded.signs import Monomial
from graded.space import Element, GradedSpace
from graded.verdict import verdict
from brackets.derivation import DerivationRep, compose
from brackets.multimap import MultiMap

logger = logging.getLogger(__name__)


class LInftyStructure:
    """
    L-infinity algebra on a graded space g

    The multibrackets m_k: S^k(g[1]) -> g[1] are held as one DerivationRep on
    the shifted space, every term of degree +1.
    """

    def __init__(self, space: GradedSpace, brackets: Optional[DerivationRep] = None,
                 cap: Optional[int] = None, name: Optional[str] = None,
                 filtration: Optional[Tuple[Dict[int, int], int]] = None):
        self.space = space
        self.shifted = space.shift(1)
        if brackets is None:
            brackets = DerivationRep.zero(self.shifted, cap)
        elif brackets.space != self.shifted:
            raise AlgebraError(f"Brackets act on {brackets.space.name}, expected {self.shifted.name}")
        if cap is not None and cap != brackets.cap:
            brackets = DerivationRep(self.shifted, brackets.entries, cap)
        bad = brackets.degrees() - {1}
        if bad:
            raise AlgebraError(f"L-infinity brackets must have degree 1, found degrees {sorted(bad)}")
        self.brackets = brackets
        self.name = name or space.name
        self.filtration = filtration
        self.origin = None

    @property
    def cap(self) -> int:
        return self.brackets.cap

    def product(self, k: int) -> MultiMap:
        entries = {m: v for m, v in self.brackets.entries.items() if len(m) == k}
        return MultiMap(self.shifted, self.shifted, k, 1, entries, validate=False)

    def evaluate(self, args: Sequence[Element]) -> Element:
        return self.brackets.evaluate(args)

    def value(self, indices: Sequence[int]) -> Element:
        return self.brackets.value(indices)

    def is_abelian(self) -> bool:
        return self.brackets.is_zero()

    def __repr__(self) -> str:
        return f"LInftyStructure({self.name}, dim {self.space.dim}, cap {self.cap})"


def from_components(space: GradedSpace, components: Iterable[MultiMap], cap: Optional[int] = None,
                    name: Optional[str] = None) -> LInftyStructure:
    shifted = space.shift(1)
    return LInftyStructure(space, DerivationRep.from_components(shifted, components, cap), cap, name)


def jacobiator(structure: LInftyStructure) -> DerivationRep:
    """m o m; the generalized Jacobi relations say exactly that it vanishes"""
    return compose(structure.brackets, structure.brackets)


def residual_entries(rep: DerivationRep, label: str = 'arity') -> List[Dict]:
    entries = []
    for monomial, value in sorted(rep.entries.items(), key=lambda kv: (len(kv[0]), kv[0])):
        entries.append({
            label: len(monomial),
            'monomial': "*".join(rep.space.symbols[i] for i in monomial),
            'residual': value.to_text(),
        })
    return entries


def check_linfty(structure: LInftyStructure) -> Dict:
    """
    Verify the generalized Jacobi relations up to the arity cap

    Returns:
        Status dict; a failure lists (arity, basis monomial, residual) entries
        and the first violated relation
    """
    residual = jacobiator(structure)
    residuals = residual_entries(residual)
    checked = [f"arity {n}" for n in range(1, structure.cap + 1)]
    result = verdict('linfty', residuals, checked, caps={'max_arity': structure.cap},
                     structure=structure.name)
    if residuals:
        result['first_violation'] = residuals[0]
        logger.info(f"Jacobi relations of {structure.name} fail at arity {residuals[0]['arity']}")
    else:
        logger.info(f"Jacobi relations of {structure.name} hold up to arity {structure.cap}")
    return result


def _weight_map(structure: LInftyStructure, weights) -> Dict[int, int]:
    """Accept weights keyed by symbol or by basis index"""
    result = {}
    for key, w in weights.items():
        i = structure.shifted.index(key) if isinstance(key, str) else key
        result[i] = w
    missing = [structure.shifted.symbols[i] for i in range(structure.space.dim) if i not in result]
    if missing:
        raise AlgebraError(f"No filtration weight for {missing}")
    if any(w < 1 for w in result.values()):
        raise AlgebraError("Filtration weights start at 1")
    return result


def check_filtered(structure: LInftyStructure, weights) -> Dict:
    """m_k(F_n1, ..., F_nk) in F_(n1+...+nk) for the filtration by basis weight"""
    weight = _weight_map(structure, weights)
    residuals = []
    for monomial, output, coefficient in structure.brackets.terms():
        needed = sum(weight[i] for i in monomial)
        if weight[output] < needed:
            residuals.append({
                'arity': len(monomial),
                'monomial': "*".join(structure.shifted.symbols[i] for i in monomial),
                'residual': f"{structure.shifted.symbols[output]} has weight {weight[output]} < {needed}",
            })
    return verdict('filtered', residuals, ['filtration'], caps={'max_arity': structure.cap})


def check_weakly_filtered(structure: LInftyStructure, weights, level: int) -> Dict:
    """m_k(g[1], ..., g[1]) in F_k for every k above level"""
    weight = _weight_map(structure, weights)
    residuals = []
    for monomial, output, coefficient in structure.brackets.terms():
        k = len(monomial)
        if k > level and weight[output] < k:
            residuals.append({
                'arity': k,
                'monomial': "*".join(structure.shifted.symbols[i] for i in monomial),
                'residual': f"{structure.shifted.symbols[output]} has weight {weight[output]} < {k}",
            })
    return verdict('weakly_filtered', residuals, [f"arity > {level}"], caps={'max_arity': structure.cap},
                   level=level)


def require_certificate(structure: LInftyStructure, certificate=None):
    """Raise TruncationError unless a weak filtration certificate holds"""
    certificate = certificate or structure.filtration
    if certificate is None:
        raise TruncationError(
            f"No nilpotent coefficients or weak filtration for {structure.name}; MC series may not terminate")
    weights, level = certificate
    result = check_weakly_filtered(structure, weights, level)
    if result['status'] != 'pass':
        raise TruncationError(f"Weak filtration certificate fails for {structure.name}: "
                              f"{result['residuals'][0]}")


def dgla_structure(dgla, cap: Optional[int] = None) -> LInftyStructure:
    """
    Shifted form of a dgla: m_1(x[1]) = -(dx)[1], m_2(x[1], y[1]) = (-1)^|x| [x, y][1]
    """
    space = dgla.space
    shifted = space.shift(1)
    entries: Dict[Monomial, Dict[int, int]] = {}
    for j, value in dgla.d.items():
        entries[(j,)] = {i: -c for i, c in value.terms.items()}
    for (i, j), value in dgla.brackets.table.items():
        sign = -1 if space.degrees[i] % 2 else 1
        entries[(i, j)] = {k: sign * c for k, c in value.terms.items()}
    rep = DerivationRep(shifted, {m: Element(shifted, t) for m, t in entries.items()}, cap)
    structure = LInftyStructure(space, rep, name=dgla.name)
    structure.origin = dgla
    return structure


def abelian_structure(space: GradedSpace, cap: Optional[int] = None) -> LInftyStructure:
    return LInftyStructure(space, DerivationRep.zero(space.shift(1), cap), name=space.name)
