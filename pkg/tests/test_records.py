"""Tests for result records and their CSV files."""

import csv

import numpy as np
import pytest

from secrelay.model import Strategy
from secrelay.model import run_baseline
from secrelay.model import scenario_id
from secrelay.model import slot_taus
from secrelay.view import make_run_record
from secrelay.view import trace_path
from secrelay.view import write_run_csv
from secrelay.view import write_summary_csv
from secrelay.view import write_trace_csv
from secrelay.view.records import SUMMARY_COLUMNS
from secrelay.view.records import format_float


@pytest.fixture
def solved(make_scenario, params, constraints):
    scenario = make_scenario(3, num_users=2, num_slots=4)
    result = run_baseline(scenario, params, constraints, Strategy.POWER_ONLY)
    return scenario, result


def read_rows(path):
    with open(path, newline='', encoding='utf-8') as f:
        return list(csv.DictReader(f))


def test_record_matches_result(solved, params):
    scenario, result = solved

    record = make_run_record(result, scenario, params, scenario_id(scenario))

    taus = slot_taus(result.trajectory, result.powers, scenario, params)
    assert record.strategy is Strategy.POWER_ONLY
    assert record.seed == scenario.seed
    assert record.objective_p1 == result.p1_objective
    assert record.wall_time is None
    assert len(record.slots) == scenario.num_slots
    for n, row in enumerate(record.slots):
        assert row.slot == n
        assert (row.x_u, row.y_u) == tuple(result.trajectory.positions[n])
        assert row.powers == tuple(result.powers.powers[:, n])
        assert row.tau == taus[n]
    assert np.mean([max(row.tau, 0) for row in record.slots]) == (
        pytest.approx(record.objective_p1, abs=1e-12)
    )


def test_run_csv_layout(solved, params, tmp_path):
    scenario, result = solved
    record = make_run_record(result, scenario, params, 'abc123')
    path = tmp_path / 'run.csv'

    write_run_csv(record, path)
    rows = read_rows(path)

    assert list(rows[0])[: len(SUMMARY_COLUMNS)] == list(SUMMARY_COLUMNS)
    assert list(rows[0])[-2:] == ['power_1', 'power_2']
    assert [r['row_type'] for r in rows] == ['summary'] + ['slot'] * 4
    assert {r['schema'] for r in rows} == {'v1'}
    assert rows[0]['strategy'] == 'power_only'
    assert rows[0]['scenario_id'] == 'abc123'
    assert rows[0]['wall_time'] == ''
    assert rows[0]['converged'] in {'true', 'false'}
    assert float(rows[0]['objective_p1']) == pytest.approx(
        record.objective_p1,
        rel=1e-11,
    )
    assert [r['slot'] for r in rows[1:]] == ['0', '1', '2', '3']


def test_trace_csv(tmp_path):
    path = tmp_path / 'out.trace.csv'

    write_trace_csv([0.5, 0.75, 0.8], path)

    assert path.read_text(encoding='utf-8') == (
        'iteration,objective_p2\n0,0.5\n1,0.75\n2,0.8\n'
    )


def test_summary_csv_keeps_order(solved, params, tmp_path):
    scenario, result = solved
    record = make_run_record(result, scenario, params, 'x', wall_time=1.25)
    path = tmp_path / 'summary.csv'

    write_summary_csv([record, record], path)
    rows = read_rows(path)

    assert len(rows) == 2
    assert rows[0]['wall_time'] == '1.25'


@pytest.mark.parametrize(
    ('path', 'expected'),
    [
        ('out.csv', 'out.trace.csv'),
        ('runs/result.csv', 'runs/result.trace.csv'),
        ('result', 'result.trace.csv'),
    ],
)
def test_trace_path(path, expected):
    assert trace_path(path).as_posix() == expected


def test_format_float_uses_twelve_digits():
    assert format_float(1 / 3) == '0.333333333333'
    assert format_float(0.0) == '0'
