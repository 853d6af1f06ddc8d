"""
hermite-mc Command Line
============================

Subcommands:
- error-study   - theoretical vs empirical randomized error over an n-grid
- tractability  - MC-tractability verdict and partial-sum diagnostics
- nmc-table     - information complexity over an (s, eps) grid
- kernel-eval   - reproducing kernel values at point pairs

Exit codes: 0 success, 2 configuration error, 3 numeric failure (completed
rows are still written), 4 finished with flagged rows.
"""

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from src.cli.commands import cmd_error_study, cmd_kernel_eval, cmd_nmc_table, cmd_tractability
from src.cli.output import render, write_output
from src.cli.schemas import ExperimentConfig
from src.config import LOG_FORMAT, LOG_LEVEL, THREADS_ENV_VAR
from src.db.base_storage import ReportStorage
from src.errors import ContractError, NumericFailure

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_FLAGGED = 4

DIAGNOSTIC_HEADER = ['s', 'S', 'S_over_log_s', 'S_over_s']
KERNEL_HEADER = ['x', 'y', 'K', 'tol', 'tail_bound', 'bound_met', 'out_of_range', 'mehler']


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', required=True, help="Path to the JSON config, or '-' for standard input")
    common.add_argument('--out', default=None, help="Output path (default: standard output)")
    common.add_argument('--format', choices=['json', 'csv'], default=None, help="Output format (overrides config)")
    common.add_argument('--seed', type=int, default=None, help="Master seed (overrides config)")
    common.add_argument('--threads', type=int, default=None,
                        help=f"Worker threads, 0 = auto (falls back to ${THREADS_ENV_VAR}, then config)")
    common.add_argument('--verbose', action='store_true', help="Log progress at INFO level")

    parser = argparse.ArgumentParser(
        prog='hermite-mc',
        description="Monte Carlo integration in Hermite spaces: errors, complexity and tractability",
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    error_study = subparsers.add_parser('error-study', parents=[common], help="Empirical vs theoretical error")
    error_study.add_argument('--store', default=None, help="TinyDB file the reports are appended to")
    error_study.add_argument('--timing', action='store_true', help="Include wall_time_ms in the output")
    subparsers.add_parser('tractability', parents=[common], help="Tractability verdict and diagnostics")
    subparsers.add_parser('nmc-table', parents=[common], help="n_mc over the (s, eps) grid")
    subparsers.add_parser('kernel-eval', parents=[common], help="Kernel values at point pairs")
    return parser


def _validation_message(e: ValidationError) -> str:
    """
    Single-line summary of a pydantic ValidationError.
    """
    parts = [f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()]
    return '; '.join(parts)


def _resolve_threads(flag: Optional[int]) -> Optional[int]:
    if flag is not None:
        return flag
    env_value = os.environ.get(THREADS_ENV_VAR)
    if env_value is None or env_value.strip() == '':
        return None
    try:
        return int(env_value)
    except ValueError:
        raise ContractError(f'{THREADS_ENV_VAR} must be an integer, got {env_value!r}')


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """
    Parse the JSON config and apply command-line overrides.
    """
    if args.config == '-':
        text = sys.stdin.read()
    else:
        with open(args.config, 'r', encoding='utf-8') as f:
            text = f.read()
    config = ExperimentConfig.model_validate_json(text)
    return config.with_overrides(
        master_seed=args.seed,
        threads=_resolve_threads(args.threads),
        format=args.format,
        output=args.out,
    )


def run(args: argparse.Namespace) -> int:
    config = load_config(args)
    command = args.command

    if command == 'error-study':
        reports, code = [], EXIT_OK
        try:
            for report in cmd_error_study(config):
                reports.append(report)
        except NumericFailure as e:
            logger.error(f"error-study stopped after {len(reports)} of {len(config.n_values)} reports: {e}")
            code = EXIT_NUMERIC
        rows = [report.to_row(timing=args.timing) for report in reports]
        write_output(render(command, config.format, rows), config.output, sys.stdout)
        if args.store and reports:
            with ReportStorage(args.store) as storage:
                storage.add_reports(reports)
        return code

    if command == 'tractability':
        verdict, rows = cmd_tractability(config)
        summary = verdict.model_dump(exclude={'certificate': {'diagnostics'}})
        write_output(render(command, config.format, rows, summary, DIAGNOSTIC_HEADER), config.output, sys.stdout)
        return EXIT_OK

    if command == 'nmc-table':
        rows, summary = cmd_nmc_table(config)
        header = None
        if all(row.n_mc_unrooted is None for row in rows):
            header = ['s', 'eps', 'n_mc', 'ratio_ecwt']
        dumped = [row.model_dump() for row in rows]
        write_output(render(command, config.format, dumped, summary, header), config.output, sys.stdout)
        return EXIT_OK

    if command == 'kernel-eval':
        rows = cmd_kernel_eval(config)
        header = KERNEL_HEADER if any(row.mehler is not None for row in rows) else KERNEL_HEADER[:-1]
        dumped = [row.model_dump() for row in rows]
        write_output(render(command, config.format, dumped, header=header), config.output, sys.stdout)
        return EXIT_FLAGGED if any(row.flagged for row in rows) else EXIT_OK

    raise ContractError(f'Unknown command: {command}')


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else LOG_LEVEL,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        return run(args)
    except ValidationError as e:
        message = _validation_message(e)
    except (ContractError, json.JSONDecodeError, OSError) as e:
        message = str(e).splitlines()[0] if str(e) else type(e).__name__
    except NumericFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC

    print(f"error: {message}", file=sys.stderr)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
