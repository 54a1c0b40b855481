"""This module moves the UAV by successive convex approximation.

Each user's rate `log2(1 + P'/psi)` is convex in the squared distance
`psi`, so its tangent at the current distance is a global lower bound.
Substituting `psi = d^2(x, y)` gives a concave quadratic in the UAV
position with an isotropic Hessian, maximized over the disk constraint
in closed form: the weighted centroid of the users, projected onto the
disk.
"""

import math

import numpy as np

from secrelay.log import get_logger

from .channel import clamp_squared_distance
from .channel import legit_capacity
from .channel import squared_distance
from .channel import uav_squared_distances
from .exceptions import ConstraintError
from .types import ChannelParams
from .types import DiskConstraint
from .types import FloatArray
from .types import PowerPolicy
from .types import Scenario
from .types import SurrogateCoefficients
from .types import UavTrajectory

_logger = get_logger(__name__)


def check_clearance(scenario: Scenario, params: ChannelParams) -> None:
    """Checks that the UAV flies at least `d_min` above every user.

    Below that height the distance clamp flattens the rate near the
    users, and the tangent bound stops being a lower bound.

    Args:
        scenario (Scenario): Scenario geometry.
        params (ChannelParams): Channel parameters.

    Raises:
        ConstraintError: The UAV altitude is too low.
    """
    clearance = scenario.altitude - float(np.max(scenario.users[..., 2]))
    if clearance < params.d_min:
        _logger.error(
            'UAV clearance %.6g m is below d_min=%g',
            clearance,
            params.d_min,
        )
        raise ConstraintError(
            f'UAV altitude must be at least d_min={params.d_min} above '
            f'every user, clearance is {clearance}',
        )


def build_surrogate(
    scenario: Scenario,
    trajectory_fea: UavTrajectory,
    powers: PowerPolicy,
    params: ChannelParams,
    slot: int,
) -> SurrogateCoefficients:
    """Tangent lower bound of one slot's legitimate sum rate.

    Args:
        scenario (Scenario): Scenario geometry.
        trajectory_fea (UavTrajectory): Feasible trajectory to expand at.
        powers (PowerPolicy): Transmit powers.
        params (ChannelParams): Channel parameters.
        slot (int): Slot index.

    Raises:
        ConstraintError: The UAV is closer than `d_min` above a user.

    Returns:
        SurrogateCoefficients: Bound that equals the true sum rate at
            `trajectory_fea.positions[slot]`.
    """
    users = scenario.users[:, slot, :]
    if trajectory_fea.altitude - float(np.max(users[:, 2])) < params.d_min:
        raise ConstraintError(
            f'UAV altitude must be at least d_min={params.d_min} above '
            f'every user of slot {slot}',
        )
    expansion = trajectory_fea.positions[slot].astype(np.float64)
    uav = np.array([expansion[0], expansion[1], trajectory_fea.altitude])
    psi = clamp_squared_distance(squared_distance(users, uav), params)
    snr = params.lambda0 * powers.powers[:, slot]

    alpha = snr / (math.log(2) * (psi * psi + snr * psi))
    const = np.log2(1 + snr / psi) + alpha * psi
    return SurrogateCoefficients(
        alpha=alpha,
        const=const,
        users=users.copy(),
        altitude=trajectory_fea.altitude,
        expansion_point=expansion,
    )


def solve_position_subproblem(
    coeffs: SurrogateCoefficients,
    disk: DiskConstraint,
) -> FloatArray:
    """Maximizes a surrogate over a disk.

    Args:
        coeffs (SurrogateCoefficients): Surrogate of one slot.
        disk (DiskConstraint): Admissible positions.

    Returns:
        FloatArray: Horizontal position `(2,)`. The expansion point when
            every weight is zero.
    """
    total = float(coeffs.alpha.sum())
    if total <= 0:
        return coeffs.expansion_point.copy()
    centroid = coeffs.alpha @ coeffs.users[:, :2] / total
    offset = centroid - disk.center
    distance = math.hypot(offset[0], offset[1])
    if distance <= disk.radius:
        return centroid
    return disk.center + disk.radius * offset / distance


def optimize_trajectory(
    scenario: Scenario,
    trajectory_fea: UavTrajectory,
    powers: PowerPolicy,
    params: ChannelParams,
) -> UavTrajectory:
    """Performs one approximation step for every slot independently.

    A slot keeps its previous position whenever the new one would
    lower the true legitimate sum rate.

    Args:
        scenario (Scenario): Scenario geometry.
        trajectory_fea (UavTrajectory): Feasible current trajectory.
        powers (PowerPolicy): Transmit powers.
        params (ChannelParams): Channel parameters.

    Returns:
        UavTrajectory: Updated feasible trajectory.
    """
    candidate = trajectory_fea.copy()
    for slot in range(scenario.num_slots):
        coeffs = build_surrogate(scenario, trajectory_fea, powers, params, slot)
        disk = DiskConstraint(scenario.cluster_center[slot], scenario.radius)
        candidate.positions[slot] = solve_position_subproblem(coeffs, disk)

    old_rate = _legit_rates(scenario, trajectory_fea, powers, params)
    new_rate = _legit_rates(scenario, candidate, powers, params)
    worse = new_rate < old_rate
    if np.any(worse):
        _logger.debug('Kept previous position in slots %s', np.flatnonzero(worse))
        candidate.positions[worse] = trajectory_fea.positions[worse]
    return candidate


def _legit_rates(
    scenario: Scenario,
    trajectory: UavTrajectory,
    powers: PowerPolicy,
    params: ChannelParams,
) -> FloatArray:
    """Legitimate sum rate per slot, shape `(N,)`."""
    d2 = uav_squared_distances(scenario, trajectory, params)
    return legit_capacity(powers.powers, d2, params).sum(axis=0)
