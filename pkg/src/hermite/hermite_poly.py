"""
Hermite Polynomials
============================

Normalized probabilists' Hermite polynomials H_k (orthonormal under the
standard Gaussian density), their tensor products, and Gauss-Hermite rules
for the Gaussian probability measure.

All evaluation goes through the normalized three-term recurrence

    H_0 = 1,  H_1(x) = x,  H_{m+1}(x) = (x H_m(x) - sqrt(m) H_{m-1}(x)) / sqrt(m+1)

so no factorial is ever formed. Inputs may be Python floats or numpy arrays;
arrays are evaluated elementwise with identical arithmetic.
"""

import logging
import math
from functools import lru_cache
from typing import Sequence

import numpy as np
from numpy.polynomial import hermite_e

from src.config import QUADRATURE_MAX_NEWTON, QUADRATURE_NODE_TOL, VALIDATED_MAX_DEGREE, VALIDATED_X_RANGE
from src.errors import ContractError, DomainError, NumericFailure
from src.hermite.schemas import MultiIndex, QuadratureRule

logger = logging.getLogger(__name__)

Real = float | np.ndarray


def _check_finite(x: Real) -> None:
    if not np.all(np.isfinite(x)):
        raise DomainError(f'Hermite evaluation needs finite arguments, got {x}')


def _check_degree(k: int) -> None:
    if k < 0:
        raise ContractError(f'Hermite degree must be non-negative, got {k}')
    if k > VALIDATED_MAX_DEGREE:
        logger.debug(f"Degree {k} is above the validated range (<= {VALIDATED_MAX_DEGREE})")


def hermite_eval(k: int, x: Real) -> Real:
    """
    Evaluate H_k(x).
    """
    _check_degree(k)
    _check_finite(x)
    if k == 0:
        return np.ones_like(x, dtype=float) if isinstance(x, np.ndarray) else 1.0

    h_prev, h = (np.ones_like(x, dtype=float) if isinstance(x, np.ndarray) else 1.0), x * 1.0
    for m in range(1, k):
        h_prev, h = h, (x * h - math.sqrt(m) * h_prev) / math.sqrt(m + 1)
    return h


def hermite_eval_batch(k_max: int, x: Real) -> np.ndarray:
    """
    Evaluate H_0(x) .. H_{k_max}(x) in a single recurrence pass.

    Returns an array of shape (k_max + 1,) + np.shape(x); entry m is bit-for-bit
    equal to hermite_eval(m, x).
    """
    _check_degree(k_max)
    _check_finite(x)
    out = np.empty((k_max + 1,) + np.shape(x), dtype=float)
    out[0] = 1.0
    if k_max == 0:
        return out

    h_prev, h = (np.ones_like(x, dtype=float) if isinstance(x, np.ndarray) else 1.0), x * 1.0
    out[1] = h
    for m in range(1, k_max):
        h_prev, h = h, (x * h - math.sqrt(m) * h_prev) / math.sqrt(m + 1)
        out[m + 1] = h
    return out


def hermite_eval_multi(k: MultiIndex, x: Sequence[float] | np.ndarray) -> Real:
    """
    Evaluate H_k(x) = prod_j H_{k_j}(x_j).

    `x` is a single point of length k.dim, or an (n, k.dim) array of points, in
    which case an array of n values is returned.
    """
    points = np.asarray(x, dtype=float)
    if points.shape[-1:] != (k.dim,) or points.ndim > 2:
        raise ContractError(f'Point shape {points.shape} does not match multi-index dimension {k.dim}')
    _check_finite(points)

    if points.ndim == 1:
        value = 1.0
        for j, kj in k.entries:
            value *= hermite_eval(kj, float(points[j - 1]))
        return value

    values = np.ones(points.shape[0], dtype=float)
    for j, kj in k.entries:
        values *= hermite_eval(kj, points[:, j - 1])
    return values


def hermite_rodrigues(k: int, x: Real) -> Real:
    """
    Explicit H_k(x) = He_k(x) / sqrt(k!) from the monomial coefficients of He_k.
    Intended for small k only (used as an independent check of the recurrence).
    """
    coeffs = hermite_e.herme2poly([0] * k + [1])
    return np.polynomial.polynomial.polyval(x, coeffs) / math.sqrt(math.factorial(k))


def node_residual(m: int, nodes: np.ndarray) -> float:
    """
    Largest Newton correction |H_m(x_i) / H_m'(x_i)| at the given nodes,
    relative to max(1, |x_i|).
    """
    values = hermite_eval_batch(m, nodes)
    step = values[m] / (math.sqrt(m) * values[m - 1])
    return float(np.max(np.abs(step) / np.maximum(1.0, np.abs(nodes))))


@lru_cache(maxsize=64)
def gauss_hermite_rule(m: int) -> QuadratureRule:
    """
    m-point Gauss-Hermite rule for the standard Gaussian probability measure.

    Nodes start from numpy's probabilists' rule (hermegauss) and are polished
    by Newton steps on the normalized recurrence (H_m' = sqrt(m) H_{m-1}) until
    the correction is within QUADRATURE_NODE_TOL, then symmetrized. Weights are
    the Christoffel numbers 1 / sum_{k<m} H_k(x_i)^2, renormalized to sum to one.
    """
    if m < 1:
        raise ContractError(f'Quadrature order must be >= 1, got {m}')
    if m == 1:
        return QuadratureRule(nodes=(0.0,), weights=(1.0,))

    nodes, _ = hermite_e.hermegauss(m)
    for _ in range(QUADRATURE_MAX_NEWTON):
        values = hermite_eval_batch(m, nodes)
        step = values[m] / (math.sqrt(m) * values[m - 1])
        nodes = nodes - step
        if np.max(np.abs(step) / np.maximum(1.0, np.abs(nodes))) <= QUADRATURE_NODE_TOL:
            break
    nodes = 0.5 * (nodes - nodes[::-1])

    residual = node_residual(m, nodes)
    if not residual <= QUADRATURE_NODE_TOL:
        raise NumericFailure(f'Gauss-Hermite rule m={m}: node residual {residual:.3e} above {QUADRATURE_NODE_TOL}')

    values = hermite_eval_batch(m - 1, nodes)
    weights = 1.0 / np.sum(values ** 2, axis=0)
    weights = 0.5 * (weights + weights[::-1])
    weights = weights / math.fsum(weights)

    logger.debug(f"Gauss-Hermite rule m={m}: node residual {residual:.3e}")
    return QuadratureRule(nodes=tuple(float(v) for v in nodes), weights=tuple(float(v) for v in weights))


def in_validated_range(x: Real) -> bool:
    """True when every coordinate satisfies |x_j| <= VALIDATED_X_RANGE."""
    return bool(np.all(np.abs(np.asarray(x, dtype=float)) <= VALIDATED_X_RANGE))
