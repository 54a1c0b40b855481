"""This module generates, checks and stores problem geometries."""

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import ValidationError

from secrelay.log import get_logger

from .exceptions import ScenarioError
from .types import Scenario
from .types import ScenarioConfig

SCENARIO_ID_LENGTH = 12
"""Hex digits of the scenario digest used as its identifier."""

_logger = get_logger(__name__)


class ScenarioFile(BaseModel):
    """On-disk layout of a scenario, arrays are row-major."""

    model_config = ConfigDict(extra='ignore', populate_by_name=True)

    users: list[list[list[float]]]
    eavesdroppers: list[list[float]]
    cluster_center: list[list[float]]
    radius: float = Field(alias='R')
    altitude: float = Field(alias='H')
    seed: int | None = None


def generate_scenario(config: ScenarioConfig) -> Scenario:
    """Draws a random scenario with a linearly drifting user cluster.

    Users are uniform in the cluster disk of every slot independently,
    eavesdroppers are uniform in a square field centered on the cluster
    start and stay put.

    Args:
        config (ScenarioConfig): Generation parameters.

    Returns:
        Scenario: Generated scenario, a pure function of `config`.
    """
    rng = np.random.default_rng(config.rng_seed)
    m, k, n = config.num_users, config.num_eavesdroppers, config.num_slots

    start = np.array([config.cluster_start.x, config.cluster_start.y])
    velocity = np.asarray(config.cluster_velocity, dtype=np.float64)
    centers = start + np.arange(n)[:, np.newaxis] * velocity

    radii = config.cluster_radius * np.sqrt(rng.random((m, n)))
    angles = 2 * np.pi * rng.random((m, n))
    users = np.empty((m, n, 3))
    users[..., 0] = centers[:, 0] + radii * np.cos(angles)
    users[..., 1] = centers[:, 1] + radii * np.sin(angles)
    users[..., 2] = config.user_height

    half = config.field_size / 2
    eavesdroppers = np.empty((k, 3))
    eavesdroppers[:, :2] = start + rng.uniform(-half, half, size=(k, 2))
    eavesdroppers[:, 2] = config.eaves_height

    _logger.debug(
        'Generated scenario M=%d K=%d N=%d seed=%d',
        m,
        k,
        n,
        config.rng_seed,
    )
    return Scenario(
        users=users,
        eavesdroppers=eavesdroppers,
        cluster_center=centers,
        radius=config.uav_disk_radius,
        altitude=config.uav_altitude,
        seed=config.rng_seed,
    )


def validate_scenario(scenario: Scenario) -> list[str]:
    """Lists violated structural invariants of a scenario.

    Args:
        scenario (Scenario): Scenario to check.

    Returns:
        list[str]: Error messages, empty when the scenario is well-formed.
    """
    errors: list[str] = []
    users = np.asarray(scenario.users)
    eaves = np.asarray(scenario.eavesdroppers)
    centers = np.asarray(scenario.cluster_center)

    if users.ndim != 3 or users.shape[2] != 3:
        errors.append(f'users must have shape (M, N, 3), got {users.shape}')
    elif users.shape[0] == 0:
        errors.append('no users')
    elif users.shape[1] == 0:
        errors.append('no time slots')

    if eaves.ndim != 2 or eaves.shape[1] != 3:
        if eaves.size == 0:
            errors.append('no eavesdroppers')
        else:
            errors.append(
                f'eavesdroppers must have shape (K, 3), got {eaves.shape}',
            )
    elif eaves.shape[0] == 0:
        errors.append('no eavesdroppers')

    if centers.ndim != 2 or centers.shape[1] != 2:
        errors.append(
            f'cluster_center must have shape (N, 2), got {centers.shape}',
        )
    elif users.ndim == 3 and centers.shape[0] != users.shape[1]:
        errors.append(
            f'cluster_center has {centers.shape[0]} slots, '
            f'users have {users.shape[1]}',
        )

    for name, array in (
        ('users', users),
        ('eavesdroppers', eaves),
        ('cluster_center', centers),
    ):
        if array.size and not np.issubdtype(array.dtype, np.number):
            errors.append(f'{name} must be numeric')
            continue
        for index in np.argwhere(~np.isfinite(array)):
            where = ''.join(f'[{i}]' for i in index)
            errors.append(f'non-finite coordinate at {name}{where}')

    if not (np.isfinite(scenario.radius) and scenario.radius > 0):
        errors.append(f'R must be positive, got {scenario.radius}')
    if not (np.isfinite(scenario.altitude) and scenario.altitude > 0):
        errors.append(f'H must be positive, got {scenario.altitude}')
    return errors


def check_scenario(scenario: Scenario) -> None:
    """Raises when a scenario is malformed.

    Args:
        scenario (Scenario): Scenario to check.

    Raises:
        ScenarioError: At least one invariant is violated.
    """
    errors = validate_scenario(scenario)
    if errors:
        _logger.error('Invalid scenario: %s', '; '.join(errors))
        raise ScenarioError('; '.join(errors))


def scenario_to_dict(scenario: Scenario) -> dict[str, Any]:
    """Converts a scenario to its JSON document."""
    document: dict[str, Any] = {
        'users': scenario.users.tolist(),
        'eavesdroppers': scenario.eavesdroppers.tolist(),
        'cluster_center': scenario.cluster_center.tolist(),
        'R': float(scenario.radius),
        'H': float(scenario.altitude),
    }
    if scenario.seed is not None:
        document['seed'] = scenario.seed
    return document


def dump_scenario(scenario: Scenario) -> str:
    """Serializes a scenario to canonical JSON text."""
    return json.dumps(scenario_to_dict(scenario), indent=2) + '\n'


def scenario_id(scenario: Scenario) -> str:
    """Returns a short content digest identifying the scenario."""
    digest = hashlib.sha256(dump_scenario(scenario).encode('utf-8'))
    return digest.hexdigest()[:SCENARIO_ID_LENGTH]


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    """Writes a scenario JSON file.

    Args:
        scenario (Scenario): Scenario to write.
        path (str | Path): Destination file.
    """
    Path(path).write_text(dump_scenario(scenario), encoding='utf-8')
    _logger.debug('Saved scenario to %s', path)


def load_scenario(path: str | Path) -> Scenario:
    """Reads a scenario JSON file.

    Loaded scenarios only need to be structurally valid, users may lie
    anywhere.

    Args:
        path (str | Path): Source file.

    Raises:
        ScenarioError: The file is unreadable or the scenario malformed.

    Returns:
        Scenario: Loaded scenario.
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
        document = ScenarioFile.model_validate_json(text)
    except OSError as e:
        _logger.error('Cannot read scenario %s: %s', path, e)
        raise ScenarioError(f'Cannot read scenario {path}: {e}') from e
    except ValidationError as e:
        _logger.error('Malformed scenario %s: %s', path, e)
        raise ScenarioError(f'Malformed scenario {path}: {e}') from e

    try:
        scenario = Scenario(
            users=np.array(document.users, dtype=np.float64),
            eavesdroppers=np.array(document.eavesdroppers, dtype=np.float64),
            cluster_center=np.array(document.cluster_center, dtype=np.float64),
            radius=document.radius,
            altitude=document.altitude,
            seed=document.seed,
        )
    except ValueError as e:
        # Ragged nested lists
        raise ScenarioError(f'Malformed scenario {path}: {e}') from e
    check_scenario(scenario)
    return scenario
