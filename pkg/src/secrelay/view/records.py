"""This module renders solver results as CSV records."""

from collections.abc import Iterable
from collections.abc import Sequence
import csv
import dataclasses
from pathlib import Path
from typing import Final

from secrelay.model import ChannelParams
from secrelay.model import Scenario
from secrelay.model import SolveResult
from secrelay.model import Strategy
from secrelay.model import slot_taus
from secrelay.model import slot_worst_eavesdroppers

SCHEMA_VERSION: Final = 'v1'

FLOAT_FORMAT: Final = '.12g'
"""Twelve significant digits."""

SUMMARY_COLUMNS: Final = (
    'schema',
    'row_type',
    'scenario_id',
    'strategy',
    'seed',
    'objective_p1',
    'objective_p2',
    'iterations',
    'converged',
    'wall_time',
)

SLOT_COLUMNS: Final = ('slot', 'x_u', 'y_u', 'tau', 'worst_eaves')

TRACE_COLUMNS: Final = ('iteration', 'objective_p2')


@dataclasses.dataclass(frozen=True)
class SlotRow:
    """Per-slot part of a run record."""

    slot: int
    x_u: float
    y_u: float
    powers: tuple[float, ...]
    tau: float
    worst_eaves: int


@dataclasses.dataclass(frozen=True)
class RunRecord:
    """Serializable summary of one strategy run."""

    scenario_id: str
    strategy: Strategy
    seed: int | None
    objective_p1: float
    objective_p2: float
    iterations: int
    converged: bool
    wall_time: float | None
    slots: tuple[SlotRow, ...]
    trace: tuple[float, ...]


def make_run_record(
    result: SolveResult,
    scenario: Scenario,
    params: ChannelParams,
    scenario_id: str,
    wall_time: float | None = None,
) -> RunRecord:
    """Builds the record of a finished run.

    Args:
        result (SolveResult): Solver outcome.
        scenario (Scenario): Scenario the result belongs to.
        params (ChannelParams): Channel parameters used.
        scenario_id (str): Scenario identifier.
        wall_time (float | None, optional): Run time in seconds.

    Returns:
        RunRecord: Record consistent with `result`.
    """
    taus = slot_taus(result.trajectory, result.powers, scenario, params)
    worst = slot_worst_eavesdroppers(result.powers, scenario, params)
    slots = tuple(
        SlotRow(
            slot=n,
            x_u=float(result.trajectory.positions[n, 0]),
            y_u=float(result.trajectory.positions[n, 1]),
            powers=tuple(float(p) for p in result.powers.powers[:, n]),
            tau=float(taus[n]),
            worst_eaves=int(worst[n]),
        )
        for n in range(scenario.num_slots)
    )
    return RunRecord(
        scenario_id=scenario_id,
        strategy=result.strategy,
        seed=scenario.seed,
        objective_p1=result.p1_objective,
        objective_p2=result.p2_objective,
        iterations=result.iterations,
        converged=result.converged,
        wall_time=wall_time,
        slots=slots,
        trace=tuple(result.objective_trace),
    )


def format_float(value: float) -> str:
    return format(value, FLOAT_FORMAT)


def _summary_cells(record: RunRecord) -> list[str]:
    return [
        SCHEMA_VERSION,
        'summary',
        record.scenario_id,
        str(record.strategy),
        '' if record.seed is None else str(record.seed),
        format_float(record.objective_p1),
        format_float(record.objective_p2),
        str(record.iterations),
        str(record.converged).lower(),
        '' if record.wall_time is None else format_float(record.wall_time),
    ]


def write_run_csv(record: RunRecord, path: str | Path) -> None:
    """Writes one summary row followed by one row per slot.

    Args:
        record (RunRecord): Record to write.
        path (str | Path): Destination file.
    """
    num_users = len(record.slots[0].powers) if record.slots else 0
    power_columns = [f'power_{i + 1}' for i in range(num_users)]
    header = [*SUMMARY_COLUMNS, *SLOT_COLUMNS, *power_columns]
    blank_slot = [''] * (len(SLOT_COLUMNS) + num_users)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        writer.writerow(_summary_cells(record) + blank_slot)
        for row in record.slots:
            cells = [SCHEMA_VERSION, 'slot', record.scenario_id]
            cells += [str(record.strategy)]
            cells += [''] * (len(SUMMARY_COLUMNS) - len(cells))
            cells += [
                str(row.slot),
                format_float(row.x_u),
                format_float(row.y_u),
                format_float(row.tau),
                str(row.worst_eaves),
            ]
            cells += [format_float(p) for p in row.powers]
            writer.writerow(cells)


def write_trace_csv(trace: Sequence[float], path: str | Path) -> None:
    """Writes the objective of every iteration, starting at iteration 0."""
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(TRACE_COLUMNS)
        for iteration, value in enumerate(trace):
            writer.writerow([str(iteration), format_float(value)])


def write_summary_csv(records: Iterable[RunRecord], path: str | Path) -> None:
    """Writes one summary row per record, in the given order."""
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(SUMMARY_COLUMNS)
        for record in records:
            writer.writerow(_summary_cells(record))


def trace_path(path: str | Path) -> Path:
    """Companion trace file of a results file, `out.csv -> out.trace.csv`."""
    path = Path(path)
    return path.with_name(f'{path.stem}.trace{path.suffix or ".csv"}')
