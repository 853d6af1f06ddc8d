"""
Weight Functions of the Hermite Spaces
============================

r(k) for the finite-smoothness and analytic families, the maximizer of r
over nonzero multi-indices (which fixes the Monte Carlo error), and the
summability constant sum_k r(k).
"""

import logging
import math

import numpy as np
from scipy.special import zeta

from src.config import SUMMABILITY_TOL
from src.errors import ContractError
from src.hermite.schemas import MultiIndex
from src.spaces.schemas import AnalyticSpace, BaseHermiteSpace, FiniteSmoothnessSpace, WeightMaximum

logger = logging.getLogger(__name__)


def _check_dim(space: BaseHermiteSpace, k: MultiIndex) -> None:
    if k.dim != space.s:
        raise ContractError(f'Multi-index dimension {k.dim} does not match space dimension {space.s}')


def r_value(space: BaseHermiteSpace, k: MultiIndex) -> float:
    """
    Weight r(k); r(0) = 1 for both families.
    """
    _check_dim(space, k)
    if isinstance(space, AnalyticSpace):
        exponent = 0.0
        for j, kj in k.entries:
            exponent += space.coordinate_exponent(j, kj)
        return space.omega ** exponent

    value = 1.0
    for j, kj in k.entries:
        value *= space.coordinate_r(j, kj)
    return value


def max_r_nonzero(space: BaseHermiteSpace) -> WeightMaximum:
    """
    max over k != 0 of r(k), with ties broken towards the graded-lex smallest k.

    Finite smoothness: every maximizer has exponents in {0, 1}, and since gamma
    is nonincreasing the best support of size m is the prefix 1..m, so the
    maximum is the largest prefix product of gamma (smallest prefix on ties).
    Analytic: the maximum is omega^(min_j a_j), attained at the unit vector of
    the first coordinate achieving the minimum.
    """
    if isinstance(space, FiniteSmoothnessSpace):
        best_value, best_m = -math.inf, 0
        prefix = 1.0
        for m in range(1, space.s + 1):
            prefix *= space.coordinate_r(m, 1)
            if prefix > best_value:
                best_value, best_m = prefix, m
        argmax = MultiIndex(dim=space.s, entries=[(j, 1) for j in range(1, best_m + 1)])
        return WeightMaximum(value=best_value, argmax=argmax)

    if isinstance(space, AnalyticSpace):
        a_values = space.a_values
        j_star = int(np.argmin(a_values)) + 1  # argmin returns the first occurrence
        argmax = MultiIndex.unit(space.s, j_star)
        return WeightMaximum(value=r_value(space, argmax), argmax=argmax)

    raise ContractError(f'Unsupported space type: {type(space).__name__}')


def riemann_zeta(alpha: float) -> float:
    """
    zeta(alpha) = sum_{j >= 1} j^(-alpha), alpha > 1.
    """
    if alpha <= 1:
        raise ContractError(f'zeta(alpha) needs alpha > 1, got {alpha}')
    return float(zeta(alpha, 1))


def coordinate_sum(space: BaseHermiteSpace, j: int, tol: float = SUMMABILITY_TOL) -> float:
    """
    sum_{k >= 0} r_j(k) for a single coordinate.
    """
    if tol <= 0:
        raise ContractError(f'tol must be positive, got {tol}')
    if isinstance(space, FiniteSmoothnessSpace):
        return 1.0 + space.gamma_j(j) * riemann_zeta(space.alpha)

    cutoff = space.coordinate_cutoff(j, tol)
    return math.fsum(space.coordinate_r_array(j, cutoff))


def summability_constant(space: BaseHermiteSpace, tol: float = SUMMABILITY_TOL) -> float:
    """
    sum over all k of r(k), via the product of the per-coordinate sums.
    """
    if tol <= 0:
        raise ContractError(f'tol must be positive, got {tol}')
    total = 1.0
    for j in range(1, space.s + 1):
        total *= coordinate_sum(space, j, tol)
    logger.debug(f"Summability constant of {space.describe()}: {total}")
    return total
