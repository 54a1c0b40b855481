"""This module implements the command-line commands."""

from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
import dataclasses
import enum
from pathlib import Path
import time
from typing import Self

from pydantic import ValidationError

from secrelay.config import ChannelConfig
from secrelay.config import ConfigError
from secrelay.config import OracleConfig
from secrelay.config import PowerConfig
from secrelay.config import SolverSettings
from secrelay.log import get_logger
from secrelay.model import ChannelParams
from secrelay.model import GridSpec
from secrelay.model import PowerConstraints
from secrelay.model import Scenario
from secrelay.model import ScenarioConfig
from secrelay.model import SolverConfig
from secrelay.model import Strategy
from secrelay.model import compare_strategies
from secrelay.model import generate_scenario
from secrelay.model import grid_search_joint
from secrelay.model import load_scenario
from secrelay.model import run_alternating_optimization
from secrelay.model import run_baseline
from secrelay.model import save_scenario
from secrelay.model import scenario_id
from secrelay.view import RunRecord
from secrelay.view import Strings
from secrelay.view import make_run_record
from secrelay.view import trace_path
from secrelay.view import write_run_csv
from secrelay.view import write_summary_csv
from secrelay.view import write_trace_csv
from secrelay.view.records import format_float

_logger = get_logger(__name__)


@enum.unique
class ExitCode(enum.IntEnum):
    """Process exit status."""

    OK = 0
    USAGE_ERROR = 1
    ORACLE_FAILED = 2


@dataclasses.dataclass(frozen=True)
class ProblemSetup:
    """Channel, power and solver parameters of one invocation."""

    params: ChannelParams
    constraints: PowerConstraints
    solver: SolverConfig

    @classmethod
    def from_settings(
        cls,
        *,
        lambda0: float | None = None,
        p_avg: float | None = None,
        p_max: float | None = None,
        chi: float | None = None,
        max_iterations: int | None = None,
    ) -> Self:
        """Merges explicit values over environment settings.

        Raises:
            ConfigError: A value is invalid.
        """
        channel = ChannelConfig(lambda0=lambda0)
        power = PowerConfig(p_avg=p_avg, p_max=p_max)
        solver = SolverSettings(chi=chi, max_iterations=max_iterations)
        try:
            return cls(
                params=ChannelParams.from_lambda0(channel.lambda0, channel.d_min),
                constraints=PowerConstraints(power.p_avg, power.p_max),
                solver=SolverConfig(
                    chi=solver.chi,
                    max_iterations=solver.max_iterations,
                ),
            )
        except ValueError as e:
            _logger.critical('Invalid problem parameters: %s', e)
            raise ConfigError(e) from e


@dataclasses.dataclass(frozen=True)
class OracleReport:
    """Solver and brute-force objectives of one instance."""

    oracle_objective: float
    solver_objective: float
    ratio: float
    floor: float

    @property
    def passed(self) -> bool:
        return self.ratio >= self.floor


def read_scenario_config(
    path: str | Path | None,
    seed: int | None = None,
) -> ScenarioConfig:
    """Reads a scenario config JSON file, defaults when `path` is `None`.

    Args:
        path (str | Path | None): Config file.
        seed (int | None, optional): Overrides the file's seed.

    Raises:
        ConfigError: The file is unreadable or a field is invalid.

    Returns:
        ScenarioConfig: Validated config.
    """
    try:
        text = Path(path).read_text(encoding='utf-8') if path else '{}'
        config = ScenarioConfig.model_validate_json(text)
        if seed is not None:
            data = config.model_dump()
            data['rng_seed'] = seed
            config = ScenarioConfig.model_validate(data)
    except OSError as e:
        _logger.critical('Cannot read scenario config %s: %s', path, e)
        raise ConfigError(f'Cannot read scenario config {path}: {e}') from e
    except ValidationError as e:
        _logger.critical('Invalid scenario config: %s', e)
        raise ConfigError(f'Invalid scenario config: {e}') from e
    return config


def resolve_scenario(
    scenario_path: str | Path | None,
    seed: int | None = None,
    config_path: str | Path | None = None,
) -> Scenario:
    """Loads a scenario file or generates one.

    Args:
        scenario_path (str | Path | None): Scenario JSON file.
        seed (int | None, optional): Seed used when generating.
        config_path (str | Path | None, optional): Scenario config used
            when generating.

    Returns:
        Scenario: Scenario to work on.
    """
    if scenario_path is not None:
        return load_scenario(scenario_path)
    return generate_scenario(read_scenario_config(config_path, seed))


def cmd_generate(
    config_path: str | Path | None,
    out_path: str | Path,
    seed: int | None = None,
) -> Scenario:
    """Generates a scenario and writes its JSON file.

    Args:
        config_path (str | Path | None): Scenario config file.
        out_path (str | Path): Scenario file to write.
        seed (int | None, optional): Overrides the config's seed.

    Returns:
        Scenario: Generated scenario.
    """
    scenario = generate_scenario(read_scenario_config(config_path, seed))
    save_scenario(scenario, out_path)
    print(
        Strings.GENERATED.format(
            scenario_id=scenario_id(scenario),
            users=scenario.num_users,
            eaves=scenario.num_eavesdroppers,
            slots=scenario.num_slots,
            seed=scenario.seed,
            path=out_path,
        ),
    )
    return scenario


def cmd_solve(
    scenario: Scenario,
    setup: ProblemSetup,
    strategy: Strategy,
    out_path: str | Path,
    *,
    timing: bool = False,
) -> RunRecord:
    """Runs one strategy and writes its results and trace CSV files.

    Args:
        scenario (Scenario): Scenario to solve.
        setup (ProblemSetup): Problem parameters.
        strategy (Strategy): Strategy to run.
        out_path (str | Path): Results CSV file, the trace goes next to it.
        timing (bool, optional): Record the wall time. Defaults to `False`.

    Returns:
        RunRecord: Written record.
    """
    start = time.perf_counter()
    result = run_baseline(
        scenario,
        setup.params,
        setup.constraints,
        strategy,
        setup.solver,
    )
    elapsed = time.perf_counter() - start
    record = make_run_record(
        result,
        scenario,
        setup.params,
        scenario_id(scenario),
        elapsed if timing else None,
    )
    write_run_csv(record, out_path)
    write_trace_csv(record.trace, trace_path(out_path))
    print(
        Strings.SOLVED.format(
            strategy=strategy,
            p1=format_float(record.objective_p1),
            p2=format_float(record.objective_p2),
            iterations=record.iterations,
            converged=record.converged,
            path=out_path,
        ),
    )
    return record


def compare_records(
    scenario: Scenario,
    setup: ProblemSetup,
    *,
    timing: bool = False,
) -> list[RunRecord]:
    """Runs every strategy and returns records in `Strategy` order."""
    start = time.perf_counter()
    results = compare_strategies(
        scenario,
        setup.params,
        setup.constraints,
        setup.solver,
    )
    elapsed = time.perf_counter() - start
    identifier = scenario_id(scenario)
    return [
        make_run_record(
            results[strategy],
            scenario,
            setup.params,
            identifier,
            elapsed if timing else None,
        )
        for strategy in Strategy
    ]


def cmd_compare(
    scenario: Scenario,
    setup: ProblemSetup,
    out_path: str | Path,
    *,
    timing: bool = False,
) -> list[RunRecord]:
    """Runs all strategies on one scenario and writes one row each.

    Args:
        scenario (Scenario): Scenario to solve.
        setup (ProblemSetup): Problem parameters.
        out_path (str | Path): Comparison CSV file.
        timing (bool, optional): Record the total wall time of the
            comparison in every row. Defaults to `False`.

    Returns:
        list[RunRecord]: Written records.
    """
    records = compare_records(scenario, setup, timing=timing)
    write_summary_csv(records, out_path)
    for record in records:
        print(
            Strings.COMPARED.format(
                strategy=record.strategy,
                p1=format_float(record.objective_p1),
                iterations=record.iterations,
            ),
        )
    print(
        Strings.COMPARE_DONE.format(
            count=len(records),
            scenario_id=records[0].scenario_id,
            path=out_path,
        ),
    )
    return records


def _sweep_one(
    config: ScenarioConfig,
    setup: ProblemSetup,
    timing: bool,
) -> list[RunRecord]:
    return compare_records(generate_scenario(config), setup, timing=timing)


def cmd_sweep(
    config_path: str | Path | None,
    seeds: Sequence[int],
    setup: ProblemSetup,
    out_path: str | Path,
    *,
    workers: int = 1,
    timing: bool = False,
) -> list[RunRecord]:
    """Compares all strategies on a batch of generated scenarios.

    Args:
        config_path (str | Path | None): Scenario config file.
        seeds (Sequence[int]): Seeds of the generated scenarios.
        setup (ProblemSetup): Problem parameters.
        out_path (str | Path): Summary CSV file.
        workers (int, optional): Worker processes. Defaults to 1.
        timing (bool, optional): Record wall times. Defaults to `False`.

    Returns:
        list[RunRecord]: Records sorted by seed and strategy.
    """
    configs = [read_scenario_config(config_path, seed) for seed in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(
                pool.map(
                    _sweep_one,
                    configs,
                    [setup] * len(configs),
                    [timing] * len(configs),
                ),
            )
    else:
        batches = [_sweep_one(c, setup, timing) for c in configs]

    order = {strategy: i for i, strategy in enumerate(Strategy)}
    records = sorted(
        (record for batch in batches for record in batch),
        key=lambda r: (r.seed, order[r.strategy]),
    )
    write_summary_csv(records, out_path)
    print(Strings.SWEEP_DONE.format(count=len(configs), path=out_path))
    return records


def cmd_oracle_check(
    scenario: Scenario,
    setup: ProblemSetup,
    grid: GridSpec,
    ratio_floor: float,
) -> OracleReport:
    """Compares the solver with the brute-force search.

    Args:
        scenario (Scenario): Small scenario, at most two users,
            eavesdroppers and slots.
        setup (ProblemSetup): Problem parameters.
        grid (GridSpec): Brute-force resolution.
        ratio_floor (float): Smallest acceptable solver/oracle ratio.

    Raises:
        OracleCostError: The scenario is too large.

    Returns:
        OracleReport: Both objectives and their ratio.
    """
    *_, oracle = grid_search_joint(
        scenario,
        setup.params,
        setup.constraints,
        grid,
    )
    result = run_alternating_optimization(
        scenario,
        setup.params,
        setup.constraints,
        setup.solver,
    )
    solver = result.p1_objective
    # Zero over zero counts as agreement
    ratio = solver / oracle if oracle > 0 else 1.0
    report = OracleReport(oracle, solver, ratio, ratio_floor)
    print(
        Strings.ORACLE_REPORT.format(
            oracle=format_float(oracle),
            solver=format_float(solver),
            ratio=format_float(ratio),
            floor=format_float(ratio_floor),
        ),
    )
    print(Strings.ORACLE_PASSED if report.passed else Strings.ORACLE_FAILED)
    return report


def oracle_settings(
    grid_res: int | None = None,
    power_levels: int | None = None,
) -> tuple[GridSpec, float]:
    """Merges explicit grid values over environment settings.

    Returns:
        tuple[GridSpec, float]: Grid and the ratio floor.
    """
    config = OracleConfig(grid_res=grid_res, power_levels=power_levels)
    grid = GridSpec(config.grid_res, config.power_levels)
    return grid, config.ratio_floor
