"""
Monte Carlo Engine
============================

The equal-weight estimator MC_n(f) = (1/n) sum_i f(x_i) with i.i.d. standard
normal nodes, the exact randomized error
e(n, s) = sqrt(max_{k != 0} r(k) / n), and replication studies that measure
the error empirically on the worst-case integrand.
"""

import logging
import math
import time

import numpy as np

from src.config import DEFAULT_MASTER_SEED
from src.errors import ContractError, NumericFailure
from src.hermite.schemas import MultiIndex
from src.kernel.kernel_space import Evaluable, evaluate_points, synthesize, worst_case_function
from src.kernel.schemas import CoefficientFunction
from src.mc.replication_manager import ReplicationManager
from src.mc.rng import sample_gaussian, stream_seed
from src.mc.schemas import ErrorReport, MCEstimate
from src.spaces.schemas import AnalyticSpace, BaseHermiteSpace
from src.spaces.weight_spaces import max_r_nonzero

logger = logging.getLogger(__name__)


def mc_estimate(f: Evaluable, nodes: np.ndarray) -> MCEstimate:
    """
    Arithmetic mean of f over the nodes, accumulated exactly (fsum).

    Non-finite values are propagated into the value (nan/inf) and counted in
    `non_finite`, so callers can tell a poisoned estimate from a large one.
    """
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    if nodes.shape[0] == 0:
        raise ContractError('mc_estimate needs at least one node')
    values = evaluate_points(f, nodes)
    non_finite = int(np.sum(~np.isfinite(values)))
    if non_finite:
        logger.warning(f"Integrand is non-finite at {non_finite} of {len(values)} nodes")
        return MCEstimate(value=float(np.sum(values) / len(values)), n=len(values), non_finite=non_finite)
    return MCEstimate(value=math.fsum(values) / len(values), n=len(values))


def true_integral(f: CoefficientFunction) -> float:
    """
    I_s(f) = f_hat(0).
    """
    return f[MultiIndex.zero(f.dim)]


def theoretical_error(space: BaseHermiteSpace, n: int) -> float:
    """
    e(n, s) = sqrt(max_{k != 0} r(k) / n).
    """
    if n < 1:
        raise ContractError(f'n must be >= 1, got {n}')
    return math.sqrt(max_r_nonzero(space).value / n)


def unrooted_error(space: AnalyticSpace, n: int) -> float:
    """
    omega^(a_0) / sqrt(n): the analytic-space error written without the square
    root on max r. Reported alongside theoretical_error, never used for decisions.
    """
    if n < 1:
        raise ContractError(f'n must be >= 1, got {n}')
    return space.omega ** space.a0 / math.sqrt(n)


def empirical_randomized_error(space: BaseHermiteSpace,
                               n: int,
                               replications: int,
                               master_seed: int = DEFAULT_MASTER_SEED,
                               threads: int = 1) -> ErrorReport:
    """
    Measure the randomized error of MC_n on the worst-case integrand f*.

    Replication i (1-based) draws its nodes from stream_seed(master_seed, i) and
    records e_i = MC_n(f*) - I(f*); d_i = e_i^2. The thread count only changes
    wall time: results are gathered in replication order and reduced with fsum.
    """
    if n < 1:
        raise ContractError(f'n must be >= 1, got {n}')
    if replications < 2:
        raise ContractError(f'Need at least 2 replications for a standard error, got {replications}')

    started = time.perf_counter()
    f_star = worst_case_function(space)
    integrand = synthesize(f_star)
    integral = true_integral(f_star)

    def replicate(i: int) -> float:
        nodes = sample_gaussian(space.s, n, stream_seed(master_seed, i))
        return mc_estimate(integrand, nodes).value - integral

    logger.info(f"Error study: {space.describe()}, n={n}, R={replications}, seed={master_seed}")
    errors = ReplicationManager(threads).run(replicate, replications)
    if not np.all(np.isfinite(errors)):
        raise NumericFailure(f'{int(np.sum(~np.isfinite(errors)))} replications produced non-finite estimates')

    squared = errors ** 2
    mse = math.fsum(squared) / replications
    d_var = math.fsum((squared - mse) ** 2) / (replications - 1)
    bias = math.fsum(errors) / replications
    bias_var = math.fsum((errors - bias) ** 2) / (replications - 1)

    maximum = max_r_nonzero(space)
    report = ErrorReport(
        space=space,
        space_label=space.describe(),
        n=n,
        s=space.s,
        replications=replications,
        master_seed=master_seed,
        worst_case_index=maximum.argmax.dense(),
        theoretical_error=theoretical_error(space, n),
        empirical_mse=mse,
        empirical_rmse=math.sqrt(mse),
        empirical_stderr=math.sqrt(d_var / replications),
        mean_bias=bias,
        bias_stderr=math.sqrt(bias_var / replications),
        unrooted_error=unrooted_error(space, n) if isinstance(space, AnalyticSpace) else None,
        wall_time_ms=(time.perf_counter() - started) * 1000.0,
    )
    logger.info(
        f"n={n}: theoretical {report.theoretical_error:.6g}, empirical rmse {report.empirical_rmse:.6g} "
        f"(mse ratio {report.mse_ratio:.4f})"
    )
    return report
