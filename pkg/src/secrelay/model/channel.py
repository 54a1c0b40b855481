"""This module evaluates link gains, capacities and secrecy objectives.

All capacities are in bits/s/Hz. Distances shorter than `d_min` are
clamped before any gain is computed, so every gain stays finite.
"""

import dataclasses

import numpy as np

from secrelay.log import get_logger

from .types import ChannelParams
from .types import FloatArray
from .types import IntArray
from .types import LinkGains
from .types import PowerPolicy
from .types import Scenario
from .types import UavTrajectory
from .types import Vec3

_logger = get_logger(__name__)


@dataclasses.dataclass
class ChannelDiagnostics:
    """Counts distance clamping events."""

    clamped: int = 0
    """Number of distances raised to `d_min`."""


def squared_distance(a: FloatArray, b: FloatArray) -> FloatArray:
    """Squared Euclidean distance along the last axis of `a - b`."""
    d = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    return d[..., 0] * d[..., 0] + d[..., 1] * d[..., 1] + d[..., 2] * d[..., 2]


def clamp_squared_distance(
    d2: FloatArray,
    params: ChannelParams,
    diagnostics: ChannelDiagnostics | None = None,
) -> FloatArray:
    """Raises squared distances below `d_min^2` to `d_min^2`.

    Args:
        d2 (FloatArray): Squared distances.
        params (ChannelParams): Channel parameters.
        diagnostics (ChannelDiagnostics | None, optional): Counter to
            update. Defaults to `None`.

    Returns:
        FloatArray: Clamped squared distances.
    """
    floor = params.d_min * params.d_min
    below = np.count_nonzero(d2 < floor)
    if below:
        _logger.debug('Clamped %d distances to d_min=%g', below, params.d_min)
        if diagnostics is not None:
            diagnostics.clamped += below
    return np.maximum(d2, floor)


def a2g_gain(
    user: Vec3,
    uav: Vec3,
    params: ChannelParams,
    diagnostics: ChannelDiagnostics | None = None,
) -> float:
    """Air-to-ground power gain `beta0 / d^2`.

    Args:
        user (Vec3): User position.
        uav (Vec3): UAV position.
        params (ChannelParams): Channel parameters.
        diagnostics (ChannelDiagnostics | None, optional): Clamp counter.

    Returns:
        float: Linear gain.
    """
    d2 = squared_distance(user.as_array(), uav.as_array())
    d2 = clamp_squared_distance(d2, params, diagnostics)
    return float(params.beta0 / d2)


def g2g_gain(
    user: Vec3,
    eaves: Vec3,
    params: ChannelParams,
    diagnostics: ChannelDiagnostics | None = None,
) -> float:
    """Ground-to-ground power gain `beta0 / d^4`.

    Args:
        user (Vec3): User position.
        eaves (Vec3): Eavesdropper position.
        params (ChannelParams): Channel parameters.
        diagnostics (ChannelDiagnostics | None, optional): Clamp counter.

    Returns:
        float: Linear gain.
    """
    d2 = squared_distance(user.as_array(), eaves.as_array())
    d2 = clamp_squared_distance(d2, params, diagnostics)
    return float(params.beta0 / (d2 * d2))


def legit_capacity(
    power: float | FloatArray,
    d2: float | FloatArray,
    params: ChannelParams,
) -> float | FloatArray:
    """User to UAV capacity `log2(1 + lambda0 P / d^2)`."""
    capacity = np.log2(1 + params.lambda0 * np.asarray(power) / d2)
    return capacity if np.ndim(capacity) else float(capacity)


def eaves_capacity(
    power: float | FloatArray,
    d4: float | FloatArray,
    params: ChannelParams,
) -> float | FloatArray:
    """User to eavesdropper capacity `log2(1 + lambda0 P / d^4)`."""
    capacity = np.log2(1 + params.lambda0 * np.asarray(power) / d4)
    return capacity if np.ndim(capacity) else float(capacity)


def uav_squared_distances(
    scenario: Scenario,
    trajectory: UavTrajectory,
    params: ChannelParams,
    diagnostics: ChannelDiagnostics | None = None,
) -> FloatArray:
    """Clamped squared user to UAV distances, shape `(M, N)`."""
    d2 = squared_distance(scenario.users, trajectory.points()[np.newaxis])
    return clamp_squared_distance(d2, params, diagnostics)


def eaves_squared_distances(
    scenario: Scenario,
    params: ChannelParams,
    diagnostics: ChannelDiagnostics | None = None,
) -> FloatArray:
    """Clamped squared user to eavesdropper distances, shape `(M, K, N)`."""
    users = scenario.users[:, np.newaxis, :, :]
    eaves = scenario.eavesdroppers[np.newaxis, :, np.newaxis, :]
    return clamp_squared_distance(
        squared_distance(users, eaves),
        params,
        diagnostics,
    )


def compute_link_gains(
    scenario: Scenario,
    trajectory: UavTrajectory,
    params: ChannelParams,
    diagnostics: ChannelDiagnostics | None = None,
) -> LinkGains:
    """Normalized gains of every link in every slot.

    Args:
        scenario (Scenario): Scenario geometry.
        trajectory (UavTrajectory): UAV positions.
        params (ChannelParams): Channel parameters.
        diagnostics (ChannelDiagnostics | None, optional): Clamp counter.

    Returns:
        LinkGains: `mu = lambda0 / d_iu^2`, `eta = lambda0 / d_ij^4`.
    """
    d2_uav = uav_squared_distances(scenario, trajectory, params, diagnostics)
    d2_eaves = eaves_squared_distances(scenario, params, diagnostics)
    lambda0 = params.lambda0
    return LinkGains(mu=lambda0 / d2_uav, eta=lambda0 / (d2_eaves * d2_eaves))


def worst_eavesdropper(
    slot_powers: FloatArray,
    gains: LinkGains,
    slot: int,
) -> int:
    """Eavesdropper with the largest summed wiretap capacity in a slot.

    Args:
        slot_powers (FloatArray): Powers of all users in the slot, `(M,)`.
        gains (LinkGains): Link gains.
        slot (int): Slot index.

    Returns:
        int: Eavesdropper index, ties go to the lowest index.
    """
    eta = gains.eta[:, :, slot]
    sums = np.log2(1 + eta * np.asarray(slot_powers)[:, np.newaxis]).sum(axis=0)
    return int(np.argmax(sums))


def worst_eavesdroppers(powers: FloatArray, gains: LinkGains) -> IntArray:
    """Vectorized `worst_eavesdropper` over all slots, shape `(N,)`."""
    sums = np.log2(1 + gains.eta * powers[:, np.newaxis, :]).sum(axis=0)
    return np.argmax(sums, axis=0)


def _power_array(powers: PowerPolicy | FloatArray) -> FloatArray:
    if isinstance(powers, PowerPolicy):
        return powers.powers
    return np.asarray(powers, dtype=np.float64)


def capacity_terms(
    scenario: Scenario,
    trajectory: UavTrajectory,
    powers: PowerPolicy | FloatArray,
    params: ChannelParams,
) -> tuple[FloatArray, FloatArray]:
    """Per-link capacities of every slot.

    Returns:
        tuple[FloatArray, FloatArray]: Legitimate capacities `(M, N)` and
            wiretap capacities `(M, K, N)`.
    """
    p = _power_array(powers)
    d2_uav = uav_squared_distances(scenario, trajectory, params)
    d2_eaves = eaves_squared_distances(scenario, params)
    legit = legit_capacity(p, d2_uav, params)
    wiretap = eaves_capacity(p[:, np.newaxis, :], d2_eaves * d2_eaves, params)
    return legit, wiretap


def slot_taus(
    trajectory: UavTrajectory,
    powers: PowerPolicy | FloatArray,
    scenario: Scenario,
    params: ChannelParams,
) -> FloatArray:
    """Unclamped secrecy rate of every slot, shape `(N,)`."""
    legit, wiretap = capacity_terms(scenario, trajectory, powers, params)
    return legit.sum(axis=0) - wiretap.sum(axis=0).max(axis=0)


def slot_worst_eavesdroppers(
    powers: PowerPolicy | FloatArray,
    scenario: Scenario,
    params: ChannelParams,
) -> IntArray:
    """Strongest eavesdropper per slot by summed wiretap capacity."""
    p = _power_array(powers)
    d2_eaves = eaves_squared_distances(scenario, params)
    wiretap = eaves_capacity(p[:, np.newaxis, :], d2_eaves * d2_eaves, params)
    return np.argmax(wiretap.sum(axis=0), axis=0)


def tau(
    slot: int,
    trajectory: UavTrajectory,
    powers: PowerPolicy | FloatArray,
    scenario: Scenario,
    params: ChannelParams,
) -> float:
    """Unclamped secrecy rate of one slot, may be negative.

    Args:
        slot (int): Slot index.
        trajectory (UavTrajectory): UAV positions.
        powers (PowerPolicy | FloatArray): Transmit powers.
        scenario (Scenario): Scenario geometry.
        params (ChannelParams): Channel parameters.

    Raises:
        IndexError: `slot` is outside `[0, N)`.

    Returns:
        float: Sum of legitimate capacities minus the largest sum of
            wiretap capacities.
    """
    if not 0 <= slot < scenario.num_slots:
        raise IndexError(
            f'Slot {slot} is out of range for {scenario.num_slots} slots',
        )
    return float(slot_taus(trajectory, powers, scenario, params)[slot])


def objective_p2(
    trajectory: UavTrajectory,
    powers: PowerPolicy | FloatArray,
    scenario: Scenario,
    params: ChannelParams,
) -> float:
    """Average unclamped secrecy rate over the slots."""
    return float(np.mean(slot_taus(trajectory, powers, scenario, params)))


def objective_p1(
    trajectory: UavTrajectory,
    powers: PowerPolicy | FloatArray,
    scenario: Scenario,
    params: ChannelParams,
) -> float:
    """Average secrecy rate with negative slots counted as zero."""
    taus = slot_taus(trajectory, powers, scenario, params)
    return float(np.mean(np.maximum(taus, 0.0)))
