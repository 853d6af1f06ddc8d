"""
Hermite Space Kernel and Inner Products
============================

Reproducing kernel K_r(x, y) = sum_k r(k) H_k(x) H_k(y), inner products and
norms computed from Hermite coefficients, synthesis of functions from their
coefficients, and a Gauss-Hermite oracle for the coefficients themselves.
"""

import itertools
import logging
import math
import sys
from typing import Callable, Sequence

import numpy as np

from src.config import CRAMER_CONSTANT, DEFAULT_QUADRATURE_ORDER, KERNEL_MAX_CUTOFF, KERNEL_TOL
from src.errors import ContractError
from src.hermite.hermite_poly import (
    gauss_hermite_rule,
    hermite_eval_batch,
    hermite_eval_multi,
    in_validated_range,
)
from src.hermite.schemas import MultiIndex
from src.kernel.schemas import CoefficientFunction, KernelEvaluation
from src.spaces.schemas import AnalyticSpace, BaseHermiteSpace
from src.spaces.weight_spaces import coordinate_sum, max_r_nonzero, r_value

logger = logging.getLogger(__name__)

Evaluable = Callable[[np.ndarray], np.ndarray | float]

LOG_FLOAT_MAX = math.log(sys.float_info.max)


# ===== KERNEL =====

def _as_point(space: BaseHermiteSpace, x: Sequence[float]) -> np.ndarray:
    point = np.asarray(x, dtype=float).reshape(-1)
    if point.shape != (space.s,):
        raise ContractError(f'Point {x} does not have dimension {space.s}')
    if not np.all(np.isfinite(point)):
        raise ContractError(f'Point {x} has non-finite coordinates')
    return point


def _log_envelope(xj: float, yj: float) -> float:
    # log of Cramer's bound |H_k(t)| <= CRAMER_CONSTANT * exp(t^2 / 4), uniform in k
    return 2.0 * math.log(CRAMER_CONSTANT) + (xj * xj + yj * yj) / 4.0


def _exp(log_value: float) -> float:
    return math.exp(log_value) if log_value < LOG_FLOAT_MAX else math.inf


def choose_cutoffs(space: BaseHermiteSpace, x: np.ndarray, y: np.ndarray, tol: float) -> tuple[list[int], float]:
    """
    Per-coordinate truncation degrees K_j and the resulting tail bound.

    With E_j the envelope of |H_k(x_j) H_k(y_j)| and U_j = E_j * sum_k r_j(k),
    the neglected part of the product series is at most
    sum_j E_j * tail_j(K_j) * prod_{i != j} U_i. Each coordinate gets an equal
    share tol / s of that budget; K_j is capped at KERNEL_MAX_CUTOFF.

    Envelopes and products are kept as logarithms. A coordinate whose tail
    target is below the smallest normal double gets the cap and makes the
    bound infinite.
    """
    log_envelopes = [_log_envelope(float(xj), float(yj)) for xj, yj in zip(x, y)]
    log_uppers = [e + math.log(coordinate_sum(space, j)) for j, e in enumerate(log_envelopes, start=1)]
    log_total = math.fsum(log_uppers)

    log_share = math.log(tol * (1.0 - 1e-9) / space.s)  # rounding margin
    cutoffs, tail_bound = [], 0.0
    for j in range(1, space.s + 1):
        log_scale = log_envelopes[j - 1] + (log_total - log_uppers[j - 1])
        tail_target = math.exp(log_share - log_scale)
        if tail_target < sys.float_info.min:
            cutoffs.append(KERNEL_MAX_CUTOFF)
            tail_bound = math.inf
            continue
        cutoff = min(space.coordinate_cutoff(j, tail_target), KERNEL_MAX_CUTOFF)
        while cutoff < KERNEL_MAX_CUTOFF and space.coordinate_tail_bound(j, cutoff) > tail_target:
            cutoff += 1
        cutoffs.append(cutoff)
        tail = space.coordinate_tail_bound(j, cutoff)
        if tail > 0.0:
            tail_bound += _exp(log_scale + math.log(tail))
    return cutoffs, tail_bound


def _series_sum(weights: np.ndarray, hx: np.ndarray, hy: np.ndarray) -> float:
    terms = weights * (hx * hy)
    if not np.all(np.isfinite(terms)):
        return math.nan
    try:
        return math.fsum(terms)
    except OverflowError:
        return math.nan


def kernel_eval(space: BaseHermiteSpace, x: Sequence[float], y: Sequence[float], tol: float = KERNEL_TOL) -> KernelEvaluation:
    """
    Truncated K_r(x, y) over the product grid {0..K_1} x ... x {0..K_s}.

    Because r and H_k both factorize over coordinates, the grid sum equals the
    product of the one-dimensional sums sum_{k <= K_j} r_j(k) H_k(x_j) H_k(y_j),
    which is how it is computed. Each term is r_j(k) * (H_k(x_j) * H_k(y_j)) and
    sums are exact (fsum), so K(x, y) == K(y, x) bit for bit.

    Far outside the validated range the Hermite values overflow; the value is
    then NaN and the evaluation is flagged, never raised.
    """
    if tol <= 0:
        raise ContractError(f'Kernel tolerance must be positive, got {tol}')
    x, y = _as_point(space, x), _as_point(space, y)
    out_of_range = not (in_validated_range(x) and in_validated_range(y))
    if out_of_range:
        logger.warning(f"Kernel arguments outside validated range: x={x.tolist()}, y={y.tolist()}")

    cutoffs, tail_bound = choose_cutoffs(space, x, y, tol)
    value = 1.0
    for j, cutoff in enumerate(cutoffs, start=1):
        weights = space.coordinate_r_array(j, cutoff)
        hx = hermite_eval_batch(cutoff, float(x[j - 1]))
        hy = hermite_eval_batch(cutoff, float(y[j - 1]))
        value *= _series_sum(weights, hx, hy)
    if not math.isfinite(value):
        logger.warning(f"Kernel value is not finite at x={x.tolist()}, y={y.tolist()}")

    bound_met = tail_bound <= tol
    if not bound_met:
        logger.warning(
            f"Kernel tail bound {tail_bound:.3e} exceeds tol {tol:.1e} at cutoff cap {KERNEL_MAX_CUTOFF} "
            f"for {space.describe()}"
        )
    return KernelEvaluation(value=value, tol=tol, cutoffs=cutoffs, tail_bound=tail_bound,
                            bound_met=bound_met, out_of_range=out_of_range)


def mehler_reference(space: BaseHermiteSpace, x: Sequence[float], y: Sequence[float]) -> float | None:
    """
    Closed-form analytic kernel when every b_j = 1 (Mehler's formula with
    rho_j = omega^(a_j)); None for any other space.
    """
    if not isinstance(space, AnalyticSpace) or any(b != 1.0 for b in space.b_values):
        return None
    x, y = _as_point(space, x), _as_point(space, y)
    value = 1.0
    for j in range(space.s):
        rho = space.omega ** space.a_j(j + 1)
        one_minus = 1.0 - rho * rho
        exponent = (2.0 * rho * x[j] * y[j] - rho * rho * (x[j] ** 2 + y[j] ** 2)) / (2.0 * one_minus)
        value *= _exp(exponent) / math.sqrt(one_minus)
    return value


def kernel_section(space: BaseHermiteSpace, x: Sequence[float], cutoffs: Sequence[int]) -> CoefficientFunction:
    """
    Coefficients {k: r(k) H_k(x)} of K_r(., x) over the grid {0..K_j}.
    """
    x = _as_point(space, x)
    if len(cutoffs) != space.s:
        raise ContractError(f'Expected {space.s} cutoffs, got {len(cutoffs)}')
    h_values = [hermite_eval_batch(int(c), float(xj)) for c, xj in zip(cutoffs, x)]
    coeffs = {}
    for dense in itertools.product(*(range(int(c) + 1) for c in cutoffs)):
        k = MultiIndex.from_dense(dense)
        h = math.prod(h_values[j][kj] for j, kj in enumerate(dense))
        coeffs[k] = r_value(space, k) * h
    return CoefficientFunction(space.s, coeffs)


# ===== INNER PRODUCT / NORM =====

def inner_product(space: BaseHermiteSpace, f: CoefficientFunction, g: CoefficientFunction) -> float:
    """
    <f, g> = sum_k f_hat(k) g_hat(k) / r(k) over the common support.
    """
    if f.dim != space.s or g.dim != space.s:
        raise ContractError(f'Dimensions {f.dim}, {g.dim} do not match space dimension {space.s}')
    return math.fsum(v * g[k] / r_value(space, k) for k, v in f.items() if k in g)


def norm(space: BaseHermiteSpace, f: CoefficientFunction) -> float:
    return math.sqrt(max(inner_product(space, f, f), 0.0))


# ===== SYNTHESIS / COEFFICIENT ORACLE =====

class HermiteExpansion:
    """
    Evaluator x -> sum_k f_hat(k) H_k(x) for a finite coefficient map.

    Called with one point (length s) it returns a float; with an (n, s) array
    it returns n values.
    """

    def __init__(self, coefficients: CoefficientFunction):
        self.coefficients = coefficients
        self.dim = coefficients.dim
        self._terms = list(coefficients.items())

    def __call__(self, x: Sequence[float] | np.ndarray) -> float | np.ndarray:
        points = np.asarray(x, dtype=float)
        if points.shape[-1:] != (self.dim,) or points.ndim > 2:
            raise ContractError(f'Point shape {points.shape} does not match dimension {self.dim}')
        if points.ndim == 1:
            return math.fsum(v * hermite_eval_multi(k, points) for k, v in self._terms)

        total = np.zeros(points.shape[0], dtype=float)
        for k, v in self._terms:
            total += v * hermite_eval_multi(k, points)
        return total


def synthesize(f: CoefficientFunction) -> HermiteExpansion:
    return HermiteExpansion(f)


def evaluate_points(f: Evaluable, points: np.ndarray) -> np.ndarray:
    """
    Evaluate f on an (n, s) array of points, vectorized when f supports it.
    """
    try:
        values = np.asarray(f(points), dtype=float)
        if values.shape == (points.shape[0],):
            return values
    except (TypeError, ValueError, IndexError):
        pass
    return np.array([float(f(point)) for point in points], dtype=float)


def tensor_rule(dim: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Tensor Gauss-Hermite grid: (m^dim, dim) points and m^dim product weights.
    """
    rule = gauss_hermite_rule(m)
    nodes, weights = rule.node_array, rule.weight_array
    grids = np.meshgrid(*([nodes] * dim), indexing='ij')
    points = np.stack([g.reshape(-1) for g in grids], axis=1)
    wgrids = np.meshgrid(*([weights] * dim), indexing='ij')
    point_weights = np.prod(np.stack([g.reshape(-1) for g in wgrids], axis=1), axis=1)
    return points, point_weights


def hermite_coefficient(f: Evaluable, k: MultiIndex, m: int = DEFAULT_QUADRATURE_ORDER) -> float:
    """
    Tensor Gauss-Hermite approximation of f_hat(k) = int f H_k phi_s.
    Exact up to roundoff when f * H_k has per-coordinate degree <= 2m - 1.
    """
    if m < 1:
        raise ContractError(f'Quadrature order must be >= 1, got {m}')
    points, weights = tensor_rule(k.dim, m)
    values = evaluate_points(f, points) * hermite_eval_multi(k, points)
    return math.fsum(weights * values)


def gaussian_moment(f: Evaluable, dim: int, m: int = DEFAULT_QUADRATURE_ORDER, power: int = 1) -> float:
    """
    Tensor Gauss-Hermite approximation of int f^power phi_s.
    """
    points, weights = tensor_rule(dim, m)
    return math.fsum(weights * evaluate_points(f, points) ** power)


def worst_case_function(space: BaseHermiteSpace) -> CoefficientFunction:
    """
    Unit-norm extremal integrand sqrt(r(k*)) H_{k*}, k* = argmax_{k != 0} r(k).
    """
    maximum = max_r_nonzero(space)
    return CoefficientFunction(space.s, {maximum.argmax: math.sqrt(maximum.value)})
