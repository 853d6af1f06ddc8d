"""
Tractability of Monte Carlo Integration
============================

Information complexity n_mc(eps, s) = min{n : e(n, s) <= eps}, the three
MC-tractability notions for finite-smoothness weights gamma (decided from
S(s) = sum_{j <= s} max(log gamma_j, 0)), the analytic-space verdict, and the
numeric diagnostics that go with them.

For nonincreasing gamma:
    strong polynomial  iff  S(inf) < inf
    polynomial         iff  A = limsup S(s) / log s < inf
    weak               iff  S(s) / s -> 0

Exponential-convergence weak tractability asks for
log n_mc / (s + log eps^-1) -> 0. Since n_mc ~ C eps^-2, the ratio tends to 2
along eps -> 0 with s fixed, so it never holds for Monte Carlo.
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import zeta

from src.config import DIAGNOSTIC_S_GRID, HEURISTIC_SETTLE_TOL
from src.errors import ContractError, NumericFailure
from src.spaces.schemas import (
    AnalyticSpace,
    BaseHermiteSpace,
    BaseWeightSequence,
    ConstantWeights,
    GeometricWeights,
    OffsetPolynomialWeights,
    PolynomialWeights,
    RootGeometricWeights,
    TableWeights,
)
from src.spaces.weight_spaces import max_r_nonzero
from src.tractability.schemas import (
    ComplexityRow,
    DiagnosticRow,
    TractabilityCertificate,
    TractabilityVerdict,
)

logger = logging.getLogger(__name__)

EXACT_FLOAT_INT = 2 ** 53
MAX_EXPLICIT_TERMS = 10_000_000  # explicit log-sum length before switching to quadrature
OFFSET_TAIL_START = 1_000_000  # offset = 1 products: explicit terms before the zeta tail


# ===== INFORMATION COMPLEXITY =====

def _check_eps(eps: float) -> None:
    if not (0 < eps < 1):
        raise ContractError(f'eps must lie in (0, 1), got {eps}')


def _ceil_ratio(value: float, eps: float) -> int:
    """
    Exact ceil(value / eps^2) for the binary values of value and eps.
    """
    if not math.isfinite(value):
        raise NumericFailure(f'Cannot form a complexity from non-finite constant {value}')
    return max(1, math.ceil(Fraction(value) / Fraction(eps) ** 2))


def _minimal_n(value: float, eps: float) -> int:
    """
    Smallest n with sqrt(value / n) <= eps, as evaluated in floating point.

    Starts from the exact rational ceiling and corrects the last unit when
    rounding in sqrt(value / n) moves the boundary.
    """
    n = _ceil_ratio(value, eps)
    if n >= EXACT_FLOAT_INT:
        return n
    while n > 1 and math.sqrt(value / (n - 1)) <= eps:
        n -= 1
    while math.sqrt(value / n) > eps:
        n += 1
    return n


def n_mc(space: BaseHermiteSpace, eps: float) -> int:
    """
    n_mc(eps, s) = ceil(max_{k != 0} r(k) / eps^2).

    Satisfies theoretical_error(space, n) <= eps < theoretical_error(space, n - 1).
    """
    _check_eps(eps)
    return _minimal_n(max_r_nonzero(space).value, eps)


def n_mc_unrooted(space: AnalyticSpace, eps: float) -> int:
    """
    ceil(eps^-2 omega^(2 a_0)), the complexity matching the error written as
    omega^(a_0) / sqrt(n). Reported next to n_mc, never used for decisions.
    """
    _check_eps(eps)
    if not isinstance(space, AnalyticSpace):
        raise ContractError(f'n_mc_unrooted applies to analytic spaces only, got {space.describe()}')
    return _ceil_ratio((space.omega ** space.a0) ** 2, eps)


def n_mc_sup(gamma: BaseWeightSequence, eps: float) -> Optional[int]:
    """
    sup_s n_mc(eps, s) = ceil(C eps^-2) under strong polynomial tractability, else None.
    """
    _check_eps(eps)
    verdict = classify_finite(gamma)
    if not verdict.strong_polynomial:
        return None
    C = verdict.certificate.C
    if C is None:
        raise NumericFailure(f'Certificate constant overflows (log C = {verdict.certificate.log_C})')
    return _ceil_ratio(C, eps)


# ===== PARTIAL SUMS =====

def partial_sum_diagnostic(gamma: BaseWeightSequence, s_values: Sequence[int]) -> list[DiagnosticRow]:
    """
    Rows (s, S(s), S(s)/log s, S(s)/s) for ascending s_values, each >= 2.

    The sum is accumulated exactly (fsum) segment by segment between
    consecutive s values.
    """
    s_values = [int(s) for s in s_values]
    if not s_values:
        raise ContractError('s_values must not be empty')
    if s_values[0] < 2 or any(b <= a for a, b in zip(s_values, s_values[1:])):
        raise ContractError(f's_values must be strictly ascending and >= 2, got {s_values}')

    excess = gamma.log_excess(s_values[-1])
    rows, total, start = [], 0.0, 0
    for s in s_values:
        total = math.fsum([total, math.fsum(excess[start:s])])
        start = s
        rows.append(DiagnosticRow(s=s, S=total, S_over_log_s=total / math.log(s), S_over_s=total / s))
    return rows


def _settles(values: Sequence[float]) -> bool:
    """
    Whether the last three values agree within HEURISTIC_SETTLE_TOL (relative).
    """
    tail = list(values[-3:])
    if all(v == 0 for v in tail):
        return True
    return max(tail) - min(tail) <= HEURISTIC_SETTLE_TOL * abs(tail[-1])


def trend_verdict(rows: Sequence[DiagnosticRow]) -> tuple[bool, bool, bool]:
    """
    Read (strong, polynomial, weak) off a dyadic diagnostic table.

    S settling means bounded partial sums; S/log s settling (or S bounded) means
    a finite A; weak needs S/s to fall below HEURISTIC_SETTLE_TOL of its peak.
    """
    if len(rows) < 3:
        raise ContractError(f'Trend test needs at least 3 rows, got {len(rows)}')
    strong = _settles([row.S for row in rows])
    polynomial = strong or _settles([row.S_over_log_s for row in rows])
    peak = max(row.S_over_s for row in rows)
    weak = polynomial or rows[-1].S_over_s <= HEURISTIC_SETTLE_TOL * peak
    return strong, polynomial, weak


# ===== CLASSIFICATION =====

def _count_above_one(gamma_of_j, estimate: float) -> int:
    """
    Number of leading j with gamma_j > 1 for a nonincreasing sequence, starting
    from a floating-point estimate and fixing it up at the boundary.
    """
    if not math.isfinite(estimate) or estimate >= EXACT_FLOAT_INT:
        raise NumericFailure(f'Too many weights above one to certify ({estimate:.3e})')
    count = max(0, int(estimate))
    while gamma_of_j(count + 1) > 1:
        count += 1
    while count > 0 and gamma_of_j(count) <= 1:
        count -= 1
    return count


def _strong(family: str, gamma_1: float, log_sup_product: float, diagnostics: list[DiagnosticRow]) -> TractabilityVerdict:
    """
    Strong verdict with C = gamma_1 if gamma_1 < 1, else exp(S(inf)).
    """
    if gamma_1 < 1:
        C, log_C = gamma_1, math.log(gamma_1)
    else:
        log_C = log_sup_product
        C = math.exp(log_C) if log_C < math.log(np.finfo(float).max) else None
    if C is None:
        logger.warning(f"Certificate constant for {family} overflows a double: log C = {log_C:.6g}")
    certificate = TractabilityCertificate(C=C, log_C=log_C, A=0.0, diagnostics=diagnostics)
    return TractabilityVerdict(strong_polynomial=True, polynomial=True, weak=True, family=family, certificate=certificate)


def _weaker(family: str, polynomial: bool, weak: bool, A: Optional[float], diagnostics: list[DiagnosticRow]) -> TractabilityVerdict:
    certificate = TractabilityCertificate(A=A, diagnostics=diagnostics)
    return TractabilityVerdict(strong_polynomial=False, polynomial=polynomial, weak=weak, family=family,
                               certificate=certificate)


def _offset_log_product(gamma: OffsetPolynomialWeights, count: int) -> float:
    """
    sum_{j <= count} log(offset + c j^-beta), explicit up to MAX_EXPLICIT_TERMS
    and by quadrature of the (decreasing) summand beyond.
    """
    explicit = min(count, MAX_EXPLICIT_TERMS)
    total = math.fsum(np.log(gamma.values(explicit)))
    if count > explicit:
        summand = lambda t: math.log(gamma.offset + gamma.c * t ** (-gamma.beta))
        tail, _ = quad(summand, explicit + 0.5, count + 0.5, limit=200)
        total += tail
    return total


def _offset_one_log_product(c: float, beta: float) -> float:
    """
    sum_{j >= 1} log(1 + c j^-beta) for beta > 1: explicit head, then
    log(1 + u) ~ u - u^2 / 2 summed with Hurwitz zeta.
    """
    j = np.arange(1, OFFSET_TAIL_START + 1, dtype=float)
    head = math.fsum(np.log1p(c * j ** (-beta)))
    tail = c * zeta(beta, OFFSET_TAIL_START + 1) - 0.5 * c * c * zeta(2 * beta, OFFSET_TAIL_START + 1)
    return head + float(tail)


def classify_finite(gamma: BaseWeightSequence,
                    s_values: Sequence[int] = DIAGNOSTIC_S_GRID) -> TractabilityVerdict:
    """
    Decide the three MC-tractability notions for finite-smoothness weights gamma.

    Built-in families are decided from their closed-form partial sums. A table
    is decided by the dyadic trend test and flagged heuristic. The diagnostic
    table over s_values is attached to every verdict.
    """
    diagnostics = partial_sum_diagnostic(gamma, s_values)
    family = gamma.family
    if not gamma.is_nonincreasing():
        logger.warning(f"{family} weights are not nonincreasing; the verdict describes S(s) only")

    if isinstance(gamma, TableWeights):
        strong, polynomial, weak = trend_verdict(diagnostics)
        logger.info(f"Heuristic verdict for table weights: strong={strong}, poly={polynomial}, weak={weak}")
        if strong:
            verdict = _strong(family, float(gamma.values(1)[0]), diagnostics[-1].S, diagnostics)
            return verdict.model_copy(update={'heuristic': True})
        A = diagnostics[-1].S_over_log_s if polynomial else None
        return _weaker(family, polynomial, weak, A, diagnostics).model_copy(update={'heuristic': True})

    # families that collapse to a constant sequence
    if isinstance(gamma, ConstantWeights):
        c = gamma.c
    elif isinstance(gamma, PolynomialWeights) and gamma.beta == 0:
        c = gamma.c
    elif isinstance(gamma, GeometricWeights) and gamma.q == 1:
        c = gamma.c
    elif isinstance(gamma, OffsetPolynomialWeights) and (gamma.c == 0 or gamma.beta == 0):
        c = gamma.offset + gamma.c
    else:
        c = None
    if c is not None:
        if c <= 1:
            return _strong(family, c, 0.0, diagnostics)
        return _weaker(family, False, False, None, diagnostics)

    if isinstance(gamma, PolynomialWeights):
        if gamma.beta < 0:
            return _weaker(family, False, False, None, diagnostics)
        count = 0
        if gamma.c > 1:
            count = _count_above_one(lambda j: gamma.c * j ** (-gamma.beta), gamma.c ** (1.0 / gamma.beta))
        log_product = count * math.log(gamma.c) - gamma.beta * math.lgamma(count + 1)
        return _strong(family, gamma.c, log_product, diagnostics)

    if isinstance(gamma, GeometricWeights):
        if gamma.q > 1:
            return _weaker(family, False, False, None, diagnostics)
        count = 0
        if gamma.c * gamma.q > 1:
            count = _count_above_one(lambda j: gamma.c * gamma.q ** j, math.log(gamma.c) / -math.log(gamma.q))
        log_product = count * math.log(gamma.c) + math.log(gamma.q) * count * (count + 1) / 2
        return _strong(family, gamma.c * gamma.q, log_product, diagnostics)

    if isinstance(gamma, RootGeometricWeights):
        if gamma.c <= 1:
            # gamma_j = c^(1/j) <= 1, so the prefix products peak at gamma_1 = c
            return _strong(family, gamma.c, 0.0, diagnostics)
        # S(s) = log(c) * H_s ~ log(c) * log(s)
        return _weaker(family, True, True, math.log(gamma.c), diagnostics)

    if isinstance(gamma, OffsetPolynomialWeights):
        gamma_1 = gamma.offset + gamma.c
        if gamma.offset > 1:
            return _weaker(family, False, False, None, diagnostics)
        if gamma.offset < 1:
            count = 0
            if gamma_1 > 1:
                estimate = (gamma.c / (1.0 - gamma.offset)) ** (1.0 / gamma.beta)
                count = _count_above_one(lambda j: gamma.offset + gamma.c * j ** (-gamma.beta), estimate)
            return _strong(family, gamma_1, _offset_log_product(gamma, count), diagnostics)
        if gamma.beta > 1:
            return _strong(family, gamma_1, _offset_one_log_product(gamma.c, gamma.beta), diagnostics)
        if gamma.beta == 1:
            # log(1 + c/j) ~ c/j, so S(s) ~ c log s
            return _weaker(family, True, True, gamma.c, diagnostics)
        # S(s) ~ c s^(1 - beta) / (1 - beta)
        return _weaker(family, False, True, None, diagnostics)

    raise ContractError(f'Unsupported weight family: {family}')


def classify_analytic(space: AnalyticSpace) -> TractabilityVerdict:
    """
    Analytic spaces are strongly polynomially tractable for all a and b, with
    C = omega^(min_j a_j).
    """
    if not isinstance(space, AnalyticSpace):
        raise ContractError(f'classify_analytic needs an analytic space, got {space.describe()}')
    log_C = space.a0 * math.log(space.omega)
    C = space.omega ** space.a0
    certificate = TractabilityCertificate(C=C if C > 0 else None, log_C=log_C, A=0.0)
    return TractabilityVerdict(strong_polynomial=True, polynomial=True, weak=True, family=space.family,
                               certificate=certificate)


# ===== COMPLEXITY DIAGNOSTICS =====

def epsilon_exponent_fit(space: BaseHermiteSpace, eps_grid: Sequence[float], s: Optional[int] = None) -> float:
    """
    Least-squares slope of log n_mc(eps) against log(1/eps).
    """
    eps_values = np.asarray(list(eps_grid), dtype=float)
    if len(eps_values) < 4:
        raise ContractError(f'eps_grid needs at least 4 values, got {len(eps_values)}')
    if np.any(eps_values <= 0) or np.any(eps_values >= 1):
        raise ContractError(f'eps values must lie in (0, 1), got {eps_values.tolist()}')
    if math.log10(eps_values.max() / eps_values.min()) < 2:
        raise ContractError(f'eps_grid must span at least two decades, got {eps_values.tolist()}')

    if s is not None and s != space.s:
        space = space.with_dimension(s)
    complexity = [n_mc(space, float(eps)) for eps in eps_values]
    slope = np.polyfit(np.log(1.0 / eps_values), np.log(np.asarray(complexity, dtype=float)), 1)[0]
    logger.info(f"eps-exponent fit for {space.describe()}: {slope:.6f}")
    return float(slope)


def _ratio_table(space: BaseHermiteSpace, path: Sequence[tuple[float, int]], denominator) -> list[ComplexityRow]:
    if not path:
        raise ContractError('path must not be empty')
    rows, spaces = [], {}
    for eps, s in path:
        s = int(s)
        if s not in spaces:
            spaces[s] = space if s == space.s else space.with_dimension(s)
        complexity = n_mc(spaces[s], eps)
        rows.append(ComplexityRow(eps=eps, s=s, n_mc=complexity, ratio=math.log(complexity) / denominator(eps, s)))
    return rows


def ec_wt_diagnostic(space: BaseHermiteSpace, path: Sequence[tuple[float, int]]) -> list[ComplexityRow]:
    """
    log n_mc / (s + log eps^-1) along a path of (eps, s) points.

    With s fixed and eps -> 0 the ratio climbs towards 2, so exponential-convergence
    weak tractability fails for Monte Carlo; with eps fixed and s growing it
    falls to 0.
    """
    return _ratio_table(space, path, lambda eps, s: s + math.log(1.0 / eps))


def wt_diagnostic(space: BaseHermiteSpace, path: Sequence[tuple[float, int]]) -> list[ComplexityRow]:
    """
    log n_mc / (s + eps^-1), the classical weak tractability ratio.
    """
    return _ratio_table(space, path, lambda eps, s: s + 1.0 / eps)
