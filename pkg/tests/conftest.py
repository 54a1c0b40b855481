"""Shared fixtures of the test suite."""

from collections.abc import Callable

import numpy as np
import pytest

from secrelay.model import ChannelParams
from secrelay.model import PowerConstraints
from secrelay.model import Scenario
from secrelay.model import ScenarioConfig
from secrelay.model import Vec3
from secrelay.model import generate_scenario

type ScenarioFactory = Callable[..., Scenario]


@pytest.fixture(scope='session')
def params() -> ChannelParams:
    return ChannelParams.from_lambda0(1e4)


@pytest.fixture(scope='session')
def constraints() -> PowerConstraints:
    return PowerConstraints(p_avg=0.1, p_max=0.2)


def small_config(
    seed: int,
    num_users: int | None = None,
    num_eavesdroppers: int | None = None,
    num_slots: int | None = None,
    **fields,
) -> ScenarioConfig:
    """Desk-sized random scenario config, sizes drawn from `seed`."""
    rng = np.random.default_rng(10_000 + seed)
    values = dict(
        num_users=num_users or int(rng.integers(1, 5)),
        num_eavesdroppers=num_eavesdroppers or int(rng.integers(1, 4)),
        num_slots=num_slots or int(rng.integers(1, 11)),
        cluster_radius=30.0,
        uav_disk_radius=40.0,
        uav_altitude=50.0,
        field_size=200.0,
        cluster_start=Vec3(0.0, 0.0, 0.0),
        cluster_velocity=(5.0, 0.0),
        rng_seed=seed,
    )
    values.update(fields)
    return ScenarioConfig(**values)


@pytest.fixture(scope='session')
def make_scenario() -> ScenarioFactory:
    """Returns a factory of seeded desk-sized scenarios."""

    def factory(seed: int = 0, **kwargs) -> Scenario:
        return generate_scenario(small_config(seed, **kwargs))

    return factory


def fixed_scenario(
    users: list[list[float]],
    eavesdroppers: list[list[float]],
    *,
    radius: float = 40.0,
    altitude: float = 50.0,
) -> Scenario:
    """One-slot scenario with explicit positions, cluster center at origin."""
    return Scenario(
        users=np.array(users, dtype=np.float64)[:, np.newaxis, :],
        eavesdroppers=np.array(eavesdroppers, dtype=np.float64),
        cluster_center=np.zeros((1, 2)),
        radius=radius,
        altitude=altitude,
    )


@pytest.fixture(scope='session')
def one_slot() -> ScenarioFactory:
    """Returns `fixed_scenario`."""
    return fixed_scenario
