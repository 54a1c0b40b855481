"""This module dispatches parsed command-line arguments to commands."""

import argparse
from collections.abc import Callable
import enum
from typing import Final

from secrelay.log import get_logger
from secrelay.model import Strategy

from .commands import ExitCode
from .commands import ProblemSetup
from .commands import cmd_compare
from .commands import cmd_generate
from .commands import cmd_oracle_check
from .commands import cmd_solve
from .commands import cmd_sweep
from .commands import oracle_settings
from .commands import resolve_scenario

type CommandHandler = Callable[[argparse.Namespace], ExitCode]


@enum.unique
class Command(enum.StrEnum):
    """Sub-commands of the command-line interface."""

    GENERATE = 'generate'
    SOLVE = 'solve'
    COMPARE = 'compare'
    SWEEP = 'sweep'
    ORACLE_CHECK = 'oracle-check'


class Controller:
    """Runs the command selected on the command line."""

    def __init__(self) -> None:
        """Initialize a controller object."""
        self._logger = get_logger(self)
        self._COMMAND_MAP: Final[dict[Command, CommandHandler]] = {
            Command.GENERATE: self._generate,
            Command.SOLVE: self._solve,
            Command.COMPARE: self._compare,
            Command.SWEEP: self._sweep,
            Command.ORACLE_CHECK: self._oracle_check,
        }

    def handle(self, args: argparse.Namespace) -> ExitCode:
        """Run the command named by `args.command`.

        Args:
            args (argparse.Namespace): Parsed arguments.

        Returns:
            ExitCode: Process exit status.
        """
        command = Command(args.command)
        self._logger.info('Running command %s', command)
        return self._COMMAND_MAP[command](args)

    def _generate(self, args: argparse.Namespace) -> ExitCode:
        cmd_generate(args.config, args.out, args.seed)
        return ExitCode.OK

    def _solve(self, args: argparse.Namespace) -> ExitCode:
        scenario = resolve_scenario(args.scenario, args.seed, args.config)
        cmd_solve(
            scenario,
            self._setup(args),
            Strategy(args.strategy),
            args.out,
            timing=args.timing,
        )
        return ExitCode.OK

    def _compare(self, args: argparse.Namespace) -> ExitCode:
        scenario = resolve_scenario(args.scenario, args.seed, args.config)
        cmd_compare(scenario, self._setup(args), args.out, timing=args.timing)
        return ExitCode.OK

    def _sweep(self, args: argparse.Namespace) -> ExitCode:
        seeds = range(args.seed, args.seed + args.count)
        cmd_sweep(
            args.config,
            seeds,
            self._setup(args),
            args.out,
            workers=args.workers,
            timing=args.timing,
        )
        return ExitCode.OK

    def _oracle_check(self, args: argparse.Namespace) -> ExitCode:
        scenario = resolve_scenario(args.scenario, args.seed, args.config)
        grid, floor = oracle_settings(args.grid_res, args.power_levels)
        report = cmd_oracle_check(scenario, self._setup(args), grid, floor)
        if not report.passed:
            self._logger.error(
                'Solver reached %.6g of the oracle objective, floor %.6g',
                report.ratio,
                report.floor,
            )
            return ExitCode.ORACLE_FAILED
        return ExitCode.OK

    def _setup(self, args: argparse.Namespace) -> ProblemSetup:
        return ProblemSetup.from_settings(
            lambda0=args.lambda0,
            p_avg=args.p_avg,
            p_max=args.p_max,
            chi=args.chi,
            max_iterations=args.max_iter,
        )
