"""Application entry point."""

import argparse
from collections.abc import Sequence
import sys
from typing import NoReturn, override

from secrelay.controller import Command
from secrelay.controller import Controller
from secrelay.controller import ExitCode
from secrelay.exceptions import SecrelayError
from secrelay.log import get_colored_traceback
from secrelay.log import get_logger
from secrelay.log import setup_logging
from secrelay.model import Strategy


class UsageError(SecrelayError):
    """Invalid command-line arguments."""


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting on bad input."""

    @override
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _add_scenario_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '--scenario',
        help='scenario JSON file; generated from --config/--seed if omitted',
    )
    parser.add_argument('--config', help='scenario config JSON file')
    parser.add_argument('--seed', type=int, help='scenario generator seed')


def _add_problem_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--lambda0', type=float, help='reference SNR at 1 m')
    parser.add_argument('--p-avg', type=float, help='average power, W')
    parser.add_argument('--p-max', type=float, help='peak power, W')
    parser.add_argument('--chi', type=float, help='convergence threshold')
    parser.add_argument('--max-iter', type=int, help='iteration limit')
    parser.add_argument(
        '--timing',
        action='store_true',
        help='record wall time (makes output non-reproducible)',
    )


def build_parser() -> argparse.ArgumentParser:
    """Builds the command-line parser.

    Returns:
        argparse.ArgumentParser: Parser with one sub-parser per command.
    """
    parser = ArgumentParser(
        prog='secrelay',
        description='Secrecy-aware UAV relay placement and power control.',
    )
    parser.add_argument(
        '--log-config',
        default='logging.json',
        help='logging dictConfig JSON file',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    generate = commands.add_parser(Command.GENERATE, help='generate a scenario')
    generate.add_argument('--config', help='scenario config JSON file')
    generate.add_argument('--seed', type=int, help='override the config seed')
    generate.add_argument('--out', required=True, help='scenario JSON file')

    solve = commands.add_parser(Command.SOLVE, help='run one strategy')
    _add_scenario_source(solve)
    _add_problem_flags(solve)
    solve.add_argument(
        '--strategy',
        choices=[str(s) for s in Strategy],
        default=str(Strategy.JOINT),
    )
    solve.add_argument('--out', required=True, help='results CSV file')

    compare = commands.add_parser(Command.COMPARE, help='run all strategies')
    _add_scenario_source(compare)
    _add_problem_flags(compare)
    compare.add_argument('--out', required=True, help='comparison CSV file')

    sweep = commands.add_parser(
        Command.SWEEP,
        help='compare strategies over many seeds',
    )
    sweep.add_argument('--config', help='scenario config JSON file')
    sweep.add_argument('--seed', type=int, default=0, help='first seed')
    sweep.add_argument('--count', type=int, default=10, help='seed count')
    sweep.add_argument('--workers', type=int, default=1, help='processes')
    _add_problem_flags(sweep)
    sweep.add_argument('--out', required=True, help='summary CSV file')

    oracle = commands.add_parser(
        Command.ORACLE_CHECK,
        help='compare the solver with brute force',
    )
    _add_scenario_source(oracle)
    _add_problem_flags(oracle)
    oracle.add_argument('--grid-res', type=int, help='grid points per axis')
    oracle.add_argument('--power-levels', type=int, help='power levels')
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run the command and return the exit status.

    Args:
        argv (Sequence[str] | None, optional): Arguments without the
            program name. Defaults to `sys.argv[1:]`.

    Returns:
        int: Exit status.
    """
    logger = get_logger(main)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        setup_logging()
        logger.critical('Usage error: %s', e)
        parser.print_usage(sys.stderr)
        return ExitCode.USAGE_ERROR

    setup_logging(args.log_config)
    try:
        return Controller().handle(args)
    except KeyboardInterrupt:
        logger.info('Stopped by keyboard interrupt')
        return ExitCode.USAGE_ERROR
    except SecrelayError as e:
        logger.critical('Stopped on error: %s', e)
        return ExitCode.USAGE_ERROR
    except Exception as e:
        logger.critical('Unexpected error: %r', e)
        logger.debug('Unhandled exception:\n%s', get_colored_traceback())
        return ExitCode.USAGE_ERROR


def main() -> None:
    """Run the command-line interface and exit."""
    sys.exit(run())


if __name__ == '__main__':
    main()
