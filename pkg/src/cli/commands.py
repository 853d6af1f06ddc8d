"""
Experiment Commands
============================

One function per CLI subcommand. Commands take a validated ExperimentConfig,
run the library operations and return plain rows plus an optional summary;
writing them out is left to src.cli.output.
"""

import logging
import math
from typing import Any, Iterator, Optional

from src.errors import ContractError
from src.kernel.kernel_space import kernel_eval, mehler_reference
from src.mc.mc_engine import empirical_randomized_error
from src.mc.schemas import ErrorReport
from src.spaces.schemas import AnalyticSpace, FiniteSmoothnessSpace
from src.cli.schemas import ExperimentConfig, KernelRow
from src.tractability.schemas import NmcRow, TractabilityVerdict
from src.tractability.tractability import (
    classify_analytic,
    classify_finite,
    epsilon_exponent_fit,
    n_mc,
    n_mc_unrooted,
)

logger = logging.getLogger(__name__)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ContractError(message)


def cmd_error_study(config: ExperimentConfig, threads: Optional[int] = None) -> Iterator[ErrorReport]:
    """
    One ErrorReport per n in config.n_values, yielded in grid order so that
    completed reports survive a later failure.
    """
    _require(config.space is not None, 'error-study needs a space')
    _require(len(config.n_values) > 0, 'error-study needs a nonempty n_values list')
    threads = config.threads if threads is None else threads

    logger.info(f"error-study: {config.space.describe()}, n={config.n_values}, R={config.replications}")
    for n in config.n_values:
        yield empirical_randomized_error(config.space, n, config.replications,
                                         master_seed=config.master_seed, threads=threads)


def cmd_tractability(config: ExperimentConfig) -> tuple[TractabilityVerdict, list[dict[str, Any]]]:
    """
    Verdict for config.gamma, or for config.space (finite smoothness: its gamma;
    analytic: unconditional), plus the diagnostic table over diagnostic_s_grid.
    """
    if config.gamma is not None:
        gamma = config.gamma
    elif isinstance(config.space, FiniteSmoothnessSpace):
        gamma = config.space.gamma
    elif isinstance(config.space, AnalyticSpace):
        verdict = classify_analytic(config.space)
        logger.info(f"tractability: analytic space, C = {verdict.certificate.C}")
        return verdict, []
    else:
        raise ContractError('tractability needs gamma or a space')

    verdict = classify_finite(gamma, config.diagnostic_s_grid)
    rows = [row.model_dump() for row in verdict.certificate.diagnostics]
    logger.info(f"tractability: {gamma.family} -> strong={verdict.strong_polynomial}, "
                f"poly={verdict.polynomial}, weak={verdict.weak}, heuristic={verdict.heuristic}")
    return verdict, rows


def cmd_nmc_table(config: ExperimentConfig) -> tuple[list[NmcRow], dict[str, Any]]:
    """
    n_mc over the (s, eps) grid with the exponential-convergence ratio, and the
    fitted eps-exponent per s as summary.
    """
    _require(config.space is not None, 'nmc-table needs a space')
    _require(len(config.eps_grid) > 0 and len(config.s_grid) > 0, 'nmc-table needs nonempty eps_grid and s_grid')

    rows, exponents = [], {}
    for s in config.s_grid:
        space = config.space if s == config.space.s else config.space.with_dimension(s)
        for eps in config.eps_grid:
            complexity = n_mc(space, eps)
            rows.append(NmcRow(
                s=s,
                eps=eps,
                n_mc=complexity,
                ratio_ecwt=math.log(complexity) / (s + math.log(1.0 / eps)),
                n_mc_unrooted=n_mc_unrooted(space, eps) if isinstance(space, AnalyticSpace) else None,
            ))
        try:
            exponents[str(s)] = epsilon_exponent_fit(space, config.eps_grid)
        except ContractError as e:
            logger.warning(f"No eps-exponent fit for s={s}: {e}")
            exponents[str(s)] = None

    return rows, {'epsilon_exponent': exponents}


def cmd_kernel_eval(config: ExperimentConfig) -> list[KernelRow]:
    """
    Truncated kernel values at the configured point pairs, with the Mehler
    closed form alongside when the space has one.
    """
    _require(config.space is not None, 'kernel-eval needs a space')
    _require(len(config.points) > 0, 'kernel-eval needs at least one point pair')

    rows = []
    for x, y in config.points:
        evaluation = kernel_eval(config.space, x, y, tol=config.kernel_tol)
        rows.append(KernelRow(
            x=x,
            y=y,
            K=evaluation.value,
            tol=evaluation.tol,
            tail_bound=evaluation.tail_bound,
            bound_met=evaluation.bound_met,
            out_of_range=evaluation.out_of_range,
            mehler=mehler_reference(config.space, x, y),
        ))
    flagged = sum(row.flagged for row in rows)
    if flagged:
        logger.warning(f"kernel-eval: {flagged} of {len(rows)} rows flagged")
    return rows
