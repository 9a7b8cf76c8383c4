"""
Classical Relative Rota-Baxter Identities
Matrix oracles for arity-one operators on ordinary Lie algebras
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from graded.errors import AlgebraError
from graded.space import Element
from brackets.derivation import DerivationRep
from linfty.dgla import BracketTable, Dgla
from linfty.structure import dgla_structure
from rota_baxter.hlr import HLRPair

logger = logging.getLogger(__name__)


def _zeros(*shape) -> np.ndarray:
    return np.full(shape, Fraction(0), dtype=object)


def pair_constants(pair: HLRPair) -> Tuple[np.ndarray, np.ndarray]:
    """
    Structure constants c[i, j, k] of g and action tensor a[i] = rho(e_i) for an
    ordinary (degree 0, strict) pair
    """
    g, V = pair.algebra.g, pair.V
    if any(g.degrees) or any(V.degrees) or not pair.rho.is_strict() or pair.v_differential:
        raise AlgebraError(f"{pair.name} is not an ordinary Lie algebra with a strict representation")
    n = g.dim
    c = _zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            for k, value in pair.structure.value((i, j)).terms.items():
                c[i, j, k] = value
    action = np.array([np.array(m, dtype=object) for m in pair.matrices()], dtype=object)
    if action.size == 0:
        action = _zeros(n, V.dim, V.dim)
    return c, action


def classical_rb_residual(constants: np.ndarray, action: np.ndarray, operator: np.ndarray) -> List[Dict]:
    """
    [Tu, Tv] - T(rho(Tu) v - rho(Tv) u) on all basis pairs u < v

    Args:
        constants: c[i, j, k], coefficient of e_k in [e_i, e_j]
        action: a[i] = matrix of rho(e_i) on V
        operator: dim g x dim V matrix of T
    """
    operator = np.array(operator, dtype=object)
    dim_v = operator.shape[1]
    residuals = []
    for u, v in itertools.combinations(range(dim_v), 2):
        tu, tv = operator[:, u], operator[:, v]
        lhs = np.tensordot(np.tensordot(tu, constants, axes=(0, 0)), tv, axes=(0, 0))
        rho_tu = np.tensordot(tu, action, axes=(0, 0))
        rho_tv = np.tensordot(tv, action, axes=(0, 0))
        rhs = operator.dot(rho_tu[:, v] - rho_tv[:, u])
        difference = lhs - rhs
        if any(x != 0 for x in difference):
            residuals.append({'relation': 'classical_rb', 'monomial': (u, v),
                              'residual': [Fraction(x) for x in difference]})
    return residuals


def is_classical_rb(constants: np.ndarray, action: np.ndarray, operator: np.ndarray) -> bool:
    return not classical_rb_residual(constants, action, operator)


def solve_classical_rb_grid(constants: np.ndarray, action: np.ndarray,
                            grid: Iterable = (-1, 0, 1)) -> List[np.ndarray]:
    """Every operator with entries from the grid satisfying the classical identity"""
    grid = [Fraction(x) for x in grid]
    dim_g, dim_v = constants.shape[0], action.shape[1]
    solutions = []
    for entries in itertools.product(grid, repeat=dim_g * dim_v):
        operator = np.array(entries, dtype=object).reshape(dim_g, dim_v)
        if is_classical_rb(constants, action, operator):
            solutions.append(operator)
    logger.debug(f"Classical RB grid search: {len(solutions)} solutions over {len(grid)} values")
    return solutions


def semidirect_constants(constants: np.ndarray, action: np.ndarray) -> np.ndarray:
    """Structure constants of g + V with [x, v] = rho(x) v and [V, V] = 0"""
    dim_g, dim_v = constants.shape[0], action.shape[1]
    n = dim_g + dim_v
    result = _zeros(n, n, n)
    result[:dim_g, :dim_g, :dim_g] = constants
    for i in range(dim_g):
        for j in range(dim_v):
            for k in range(dim_v):
                result[i, dim_g + j, dim_g + k] = action[i][k, j]
                result[dim_g + j, i, dim_g + k] = -action[i][k, j]
    return result


def twisted_classical(pair: HLRPair, operator: np.ndarray) -> DerivationRep:
    """
    e^(-T) o Phi o (e^T x e^T) for an arity-one T on an ordinary pair, in shifted form

    T extends to the nilpotent map N: V -> g on g + V, and the twisted bracket
    is [a, b]_T = (1 - N)[(1 + N) a, (1 + N) b].
    """
    algebra = pair.algebra
    constants, action = pair_constants(pair)
    full = semidirect_constants(constants, action)
    n = full.shape[0]
    lift = np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)
    lower = lift.copy()
    for i in range(algebra.g.dim):
        for j in range(algebra.V.dim):
            lift[i, algebra.offset + j] = Fraction(operator[i][j])
            lower[i, algebra.offset + j] = -Fraction(operator[i][j])
    space = algebra.unshifted
    table = {}
    for a, b in itertools.combinations_with_replacement(range(n), 2):
        bracket = np.tensordot(np.tensordot(lift[:, a], full, axes=(0, 0)), lift[:, b], axes=(0, 0))
        value = lower.dot(bracket)
        element = Element(space, {k: value[k] for k in range(n) if value[k] != 0})
        if not element.is_zero():
            table[(a, b)] = element
    twisted = Dgla(space, BracketTable(space, table), name=f"{space.name}_T")
    return dgla_structure(twisted, algebra.cap).brackets


def operator_grid(pair: HLRPair, grid: Sequence = (-1, 0, 1)) -> List[np.ndarray]:
    """Every arity-one operator with entries from the grid"""
    grid = [Fraction(x) for x in grid]
    dim_g, dim_v = pair.algebra.g.dim, pair.V.dim
    return [np.array(entries, dtype=object).reshape(dim_g, dim_v)
            for entries in itertools.product(grid, repeat=dim_g * dim_v)]
