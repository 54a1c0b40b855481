"""Tests for scenario generation, validation and storage."""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from secrelay.model import Scenario
from secrelay.model import ScenarioConfig
from secrelay.model import ScenarioError
from secrelay.model import Vec3
from secrelay.model import dump_scenario
from secrelay.model import generate_scenario
from secrelay.model import load_scenario
from secrelay.model import save_scenario
from secrelay.model import scenario_id
from secrelay.model import validate_scenario


def test_generate_shapes_and_heights():
    config = ScenarioConfig(
        num_users=3,
        num_eavesdroppers=2,
        num_slots=5,
        user_height=1.5,
        eaves_height=2.0,
        cluster_start=Vec3(10.0, -5.0, 1.5),
    )
    scenario = generate_scenario(config)

    assert scenario.users.shape == (3, 5, 3)
    assert scenario.eavesdroppers.shape == (2, 3)
    assert scenario.cluster_center.shape == (5, 2)
    np.testing.assert_array_equal(scenario.users[..., 2], 1.5)
    np.testing.assert_array_equal(scenario.eavesdroppers[:, 2], 2.0)
    assert scenario.radius == config.uav_disk_radius
    assert scenario.altitude == config.uav_altitude
    assert validate_scenario(scenario) == []


def test_generate_users_stay_in_cluster_disk():
    config = ScenarioConfig(num_users=4, num_slots=8, cluster_radius=20.0)
    scenario = generate_scenario(config)

    offsets = scenario.users[..., :2] - scenario.cluster_center[np.newaxis]
    assert np.all(np.hypot(offsets[..., 0], offsets[..., 1]) <= 20.0 + 1e-9)


def test_generate_cluster_drifts_linearly():
    config = ScenarioConfig(num_slots=4, cluster_velocity=(3.0, -1.0))
    scenario = generate_scenario(config)

    expected = np.array([[0, 0], [3, -1], [6, -2], [9, -3]], dtype=float)
    np.testing.assert_allclose(scenario.cluster_center, expected)


def test_generate_eavesdroppers_in_field():
    config = ScenarioConfig(num_eavesdroppers=3, field_size=100.0)
    scenario = generate_scenario(config)

    assert np.all(np.abs(scenario.eavesdroppers[:, :2]) <= 50.0)


def test_generate_zero_radius_puts_users_on_center():
    scenario = generate_scenario(ScenarioConfig(cluster_radius=0.0))

    np.testing.assert_allclose(
        scenario.users[..., :2],
        np.broadcast_to(scenario.cluster_center, scenario.users[..., :2].shape),
    )


def test_generate_is_deterministic():
    config = ScenarioConfig(rng_seed=42)

    first = dump_scenario(generate_scenario(config))
    second = dump_scenario(generate_scenario(config))

    assert first == second


def test_generate_seed_changes_scenario():
    a = generate_scenario(ScenarioConfig(rng_seed=1))
    b = generate_scenario(ScenarioConfig(rng_seed=2))

    assert scenario_id(a) != scenario_id(b)


@pytest.mark.parametrize(
    'fields',
    [
        {'uav_altitude': 0.0},
        {'uav_altitude': 10.0, 'user_height': 10.0},
        {'uav_disk_radius': -1.0},
        {'num_users': 0},
        {'num_eavesdroppers': 0},
        {'cluster_radius': -5.0},
        {'cluster_start': {'x': 0.0, 'y': 0.0, 'z': 3.0}},
        {'unknown_field': 1},
    ],
)
def test_config_rejects_invalid_values(fields):
    with pytest.raises(ValidationError):
        ScenarioConfig(**fields)


def test_config_error_names_the_field():
    with pytest.raises(ValidationError) as excinfo:
        ScenarioConfig.model_validate_json('{"num_slots": -3}')

    assert 'num_slots' in str(excinfo.value)


def test_config_start_height_follows_user_height():
    config = ScenarioConfig.model_validate_json('{"user_height": 1.5}')
    moved = ScenarioConfig(
        user_height=2.0,
        cluster_start={'x': 5.0, 'y': 1.0},
    )

    assert config.cluster_start == Vec3(0.0, 0.0, 1.5)
    assert moved.cluster_start == Vec3(5.0, 1.0, 2.0)
    np.testing.assert_array_equal(generate_scenario(config).users[..., 2], 1.5)


def test_validate_reports_no_eavesdroppers():
    scenario = Scenario(
        users=np.zeros((1, 1, 3)),
        eavesdroppers=np.zeros((0, 3)),
        cluster_center=np.zeros((1, 2)),
        radius=10.0,
        altitude=50.0,
    )

    assert 'no eavesdroppers' in validate_scenario(scenario)


def test_validate_reports_non_finite_coordinate():
    users = np.zeros((2, 1, 3))
    users[1, 0, 2] = np.nan
    scenario = Scenario(
        users=users,
        eavesdroppers=np.ones((1, 3)),
        cluster_center=np.zeros((1, 2)),
        radius=10.0,
        altitude=50.0,
    )

    errors = validate_scenario(scenario)

    assert 'non-finite coordinate at users[1][0][2]' in errors


def test_validate_reports_slot_mismatch_and_bad_radius():
    scenario = Scenario(
        users=np.zeros((1, 3, 3)),
        eavesdroppers=np.ones((1, 3)),
        cluster_center=np.zeros((2, 2)),
        radius=0.0,
        altitude=50.0,
    )

    errors = validate_scenario(scenario)

    assert len(errors) == 2
    assert any('cluster_center has 2 slots' in e for e in errors)
    assert any(e.startswith('R must be positive') for e in errors)


def test_save_and_load_keep_scenario(tmp_path):
    scenario = generate_scenario(ScenarioConfig(rng_seed=7, num_slots=3))
    path = tmp_path / 'scenario.json'

    save_scenario(scenario, path)
    loaded = load_scenario(path)

    np.testing.assert_array_equal(loaded.users, scenario.users)
    np.testing.assert_array_equal(loaded.eavesdroppers, scenario.eavesdroppers)
    np.testing.assert_array_equal(loaded.cluster_center, scenario.cluster_center)
    assert loaded.seed == 7
    assert scenario_id(loaded) == scenario_id(scenario)


def test_saved_file_uses_short_keys(tmp_path):
    path = tmp_path / 'scenario.json'
    save_scenario(generate_scenario(ScenarioConfig()), path)

    document = json.loads(path.read_text(encoding='utf-8'))

    assert {'users', 'eavesdroppers', 'cluster_center', 'R', 'H'} <= set(document)


def test_load_accepts_users_outside_cluster(tmp_path):
    path = tmp_path / 'far.json'
    path.write_text(
        json.dumps(
            {
                'users': [[[500.0, 500.0, 0.0]]],
                'eavesdroppers': [[0.0, 0.0, 0.0]],
                'cluster_center': [[0.0, 0.0]],
                'R': 10.0,
                'H': 50.0,
            },
        ),
        encoding='utf-8',
    )

    scenario = load_scenario(path)

    assert scenario.num_users == 1
    assert scenario.seed is None


@pytest.mark.parametrize(
    'text',
    [
        'not json',
        '{"users": [[[0, 0, 0]]]}',
        '{"users": [[[0, 0, 0]]], "eavesdroppers": [], '
        '"cluster_center": [[0, 0]], "R": 10, "H": 50}',
        '{"users": [[[0, 0, 0]], [[0, 0]]], "eavesdroppers": [[1, 1, 0]], '
        '"cluster_center": [[0, 0]], "R": 10, "H": 50}',
    ],
)
def test_load_rejects_malformed_files(tmp_path, text):
    path = tmp_path / 'bad.json'
    path.write_text(text, encoding='utf-8')

    with pytest.raises(ScenarioError):
        load_scenario(path)


def test_load_missing_file(tmp_path):
    with pytest.raises(ScenarioError):
        load_scenario(tmp_path / 'missing.json')
