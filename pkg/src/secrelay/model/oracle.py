"""This module provides brute-force reference solutions.

Nothing here calls the optimizer. Only the channel primitives are
shared, everything above capacity evaluation is recomputed on grids.
"""

import numpy as np

from secrelay.log import get_logger

from .channel import clamp_squared_distance
from .channel import eaves_capacity
from .channel import legit_capacity
from .channel import squared_distance
from .exceptions import OracleCostError
from .types import ChannelParams
from .types import FloatArray
from .types import GridSpec
from .types import PowerConstraints
from .types import PowerPolicy
from .types import Scenario
from .types import SurrogateCoefficients
from .types import UavTrajectory

MAX_JOINT_SIZE = 2
"""Largest M, K and N accepted by the joint search."""

FEASIBILITY_RTOL = 1e-9

_logger = get_logger(__name__)


def disk_grid(
    center: FloatArray,
    radius: float,
    resolution: int,
) -> tuple[FloatArray, FloatArray]:
    """Grid points of the disk's bounding square that lie in the disk.

    Args:
        center (FloatArray): Disk center `(2,)`.
        radius (float): Disk radius.
        resolution (int): Points per axis.

    Returns:
        tuple[FloatArray, FloatArray]: Flat x and y coordinates.
    """
    xs = np.linspace(center[0] - radius, center[0] + radius, resolution)
    ys = np.linspace(center[1] - radius, center[1] + radius, resolution)
    x, y = np.meshgrid(xs, ys, indexing='ij')
    inside = (x - center[0]) ** 2 + (y - center[1]) ** 2 <= radius * radius * (
        1 + 1e-12
    )
    return x[inside], y[inside]


def _legit_table(
    scenario: Scenario,
    slot: int,
    xs: FloatArray,
    ys: FloatArray,
    levels: FloatArray,
    params: ChannelParams,
) -> FloatArray:
    """Capacity of every user at every level and grid point, `(M, L, F)`."""
    points = np.column_stack((xs, ys, np.full_like(xs, scenario.altitude)))
    users = scenario.users[:, slot, :]
    d2 = clamp_squared_distance(
        squared_distance(users[:, np.newaxis, :], points[np.newaxis]),
        params,
    )
    return legit_capacity(
        levels[np.newaxis, :, np.newaxis],
        d2[:, np.newaxis, :],
        params,
    )


def grid_search_position(
    scenario: Scenario,
    powers: PowerPolicy,
    params: ChannelParams,
    slot: int,
    grid: GridSpec,
    surrogate: SurrogateCoefficients | None = None,
) -> tuple[float, float, float]:
    """Best UAV position of one slot on a grid.

    Args:
        scenario (Scenario): Scenario geometry.
        powers (PowerPolicy): Fixed transmit powers.
        params (ChannelParams): Channel parameters.
        slot (int): Slot index.
        grid (GridSpec): Grid resolution.
        surrogate (SurrogateCoefficients | None, optional): Maximize this
            bound instead of the true legitimate sum rate.

    Returns:
        tuple[float, float, float]: Best `x`, `y` and objective value.
    """
    center = scenario.cluster_center[slot]
    xs, ys = disk_grid(center, scenario.radius, grid.position_resolution)
    if surrogate is None:
        points = np.column_stack((xs, ys, np.full_like(xs, scenario.altitude)))
        users = scenario.users[:, slot, :]
        d2 = clamp_squared_distance(
            squared_distance(users[:, np.newaxis, :], points[np.newaxis]),
            params,
        )
        slot_powers = powers.powers[:, slot, np.newaxis]
        values = legit_capacity(slot_powers, d2, params).sum(axis=0)
    else:
        values = np.asarray(surrogate.evaluate(xs, ys))
    best = int(np.argmax(values))
    return float(xs[best]), float(ys[best]), float(values[best])


def grid_search_joint(
    scenario: Scenario,
    params: ChannelParams,
    constraints: PowerConstraints,
    grid: GridSpec,
) -> tuple[UavTrajectory, PowerPolicy, float]:
    """Exhaustive search of positions and powers on grids.

    Powers take `grid.power_levels` equally spaced values in
    `[0, p_max]`, combinations violating the average limit are skipped.

    Args:
        scenario (Scenario): Scenario geometry, at most two users,
            eavesdroppers and slots.
        params (ChannelParams): Channel parameters.
        constraints (PowerConstraints): Power limits.
        grid (GridSpec): Grid resolution.

    Raises:
        OracleCostError: The scenario is too large.

    Returns:
        tuple[UavTrajectory, PowerPolicy, float]: Best trajectory, powers
            and their average clamped secrecy rate.
    """
    m, k, n = (
        scenario.num_users,
        scenario.num_eavesdroppers,
        scenario.num_slots,
    )
    if max(m, k, n) > MAX_JOINT_SIZE:
        _logger.error('Oracle refused M=%d K=%d N=%d', m, k, n)
        raise OracleCostError(
            f'Joint grid search supports M, K, N <= {MAX_JOINT_SIZE}, '
            f'got M={m}, K={k}, N={n}',
        )
    levels = np.linspace(0.0, constraints.p_max, grid.power_levels)

    values, places = [], []
    for slot in range(n):
        value, place = _slot_table(scenario, slot, levels, params, grid)
        values.append(value)
        places.append(place)

    # Largest level index each user may take given its budget left
    def last_level(budget: FloatArray) -> np.ndarray:
        limit = budget * (1 + FEASIBILITY_RTOL) + 1e-300
        return np.searchsorted(levels, limit, side='right') - 1

    budget = constraints.p_avg * n
    if n == 1:
        top = int(last_level(np.array(budget)))
        box = values[0][(slice(0, top + 1),) * m]
        combo = np.unravel_index(int(np.argmax(box)), box.shape)
        combos = [combo]
        total = float(box[combo])
    else:
        prefix = values[1]
        for axis in range(m):
            prefix = np.maximum.accumulate(prefix, axis=axis)
        first = np.indices(values[0].shape)
        tops = [last_level(budget - levels[first[i]]) for i in range(m)]
        feasible = np.all([t >= 0 for t in tops], axis=0)
        clipped = tuple(np.maximum(t, 0) for t in tops)
        totals = np.where(feasible, values[0] + prefix[clipped], -np.inf)
        combo0 = np.unravel_index(int(np.argmax(totals)), totals.shape)
        box_shape = tuple(slice(0, int(t[combo0]) + 1) for t in tops)
        box = values[1][box_shape]
        combo1 = np.unravel_index(int(np.argmax(box)), box.shape)
        combos = [combo0, combo1]
        total = float(values[0][combo0] + box[combo1])

    positions = np.array(
        [places[slot][combos[slot]] for slot in range(n)],
        dtype=np.float64,
    )
    powers = np.array(
        [[levels[combos[slot][user]] for slot in range(n)] for user in range(m)],
    )
    objective = total / n
    _logger.debug('Joint grid search objective %.12g', objective)
    return (
        UavTrajectory(positions, scenario.altitude),
        PowerPolicy(powers, constraints),
        objective,
    )


def _slot_table(
    scenario: Scenario,
    slot: int,
    levels: FloatArray,
    params: ChannelParams,
    grid: GridSpec,
) -> tuple[FloatArray, FloatArray]:
    """Best clamped secrecy rate of one slot for every power combination.

    Returns:
        tuple[FloatArray, FloatArray]: Values with one axis per user of
            length L, and the matching best positions with a trailing
            axis of length 2.
    """
    m = scenario.num_users
    xs, ys = disk_grid(
        scenario.cluster_center[slot],
        scenario.radius,
        grid.position_resolution,
    )
    legit = _legit_table(scenario, slot, xs, ys, levels, params)

    if m == 1:
        best_legit = legit[0].max(axis=1)
        best_index = legit[0].argmax(axis=1)
    else:
        size = levels.size
        best_legit = np.empty((size, size))
        best_index = np.empty((size, size), dtype=np.int64)
        for level in range(size):
            rates = legit[0, level][np.newaxis, :] + legit[1]
            best_legit[level] = rates.max(axis=1)
            best_index[level] = rates.argmax(axis=1)

    users = scenario.users[:, slot, :]
    d2 = clamp_squared_distance(
        squared_distance(users[:, np.newaxis, :], scenario.eavesdroppers),
        params,
    )
    # Wiretap capacity per user, eavesdropper and level, (M, K, L)
    wiretap = eaves_capacity(
        levels[np.newaxis, np.newaxis, :],
        (d2 * d2)[:, :, np.newaxis],
        params,
    )
    if m == 1:
        worst = wiretap[0].max(axis=0)
    else:
        sums = wiretap[0][:, :, np.newaxis] + wiretap[1][:, np.newaxis, :]
        worst = sums.max(axis=0)

    value = np.maximum(best_legit - worst, 0.0)
    place = np.stack((xs[best_index], ys[best_index]), axis=-1)
    return value, place
