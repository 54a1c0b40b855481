"""This module computes secure water-filling transmit powers.

For a fixed UAV trajectory and a fixed strongest eavesdropper per slot
the power problem splits per user into a concave program whose optimum
is a water-filling rule with one dual price per user. The price is found
by bisection on the average power constraint.
"""

import math

import numpy as np

from secrelay.log import get_logger

from .channel import compute_link_gains
from .channel import objective_p2
from .channel import worst_eavesdroppers
from .types import ChannelParams
from .types import DualSolve
from .types import FloatArray
from .types import PowerConstraints
from .types import PowerPolicy
from .types import Scenario
from .types import UavTrajectory

MAX_BISECTION_STEPS = 200

POWER_RTOL = 1e-9
"""Accepted gap between the achieved and the allowed average power."""

INTERVAL_RTOL = 1e-15
"""Bisection stops once the bracket shrinks below this share of its top."""

_logger = get_logger(__name__)


def power_given_rho(mu: float, eta: float, rho: float, p_max: float) -> float:
    """Water-filling power of one slot for a given dual price.

    The unclipped power is the non-negative root of
    `mu / (1 + mu P) - eta / (1 + eta P) = rho`.

    Args:
        mu (float): Normalized gain towards the UAV.
        eta (float): Normalized gain towards the strongest eavesdropper.
        rho (float): Price of the average power constraint.
        p_max (float): Peak power.

    Returns:
        float: Power in `[0, p_max]`.
    """
    if mu <= eta or p_max <= 0:
        return 0.0
    if rho <= 0:
        return p_max
    spread = (mu - eta) / (2 * mu * eta)
    offset = 1 / (2 * eta) + 1 / (2 * mu)
    root = math.sqrt(spread * spread + (mu - eta) / (mu * eta * rho))
    # Rationalized form of root - offset, exact sign and no cancellation
    power = (mu - eta - rho) / (mu * eta * rho * (root + offset))
    return min(max(power, 0.0), p_max)


def powers_given_rho(
    mu: FloatArray,
    eta: FloatArray,
    rho: float,
    p_max: float,
) -> FloatArray:
    """Vectorized `power_given_rho` over slots."""
    mu = np.asarray(mu, dtype=np.float64)
    eta = np.asarray(eta, dtype=np.float64)
    active = mu > eta
    if p_max <= 0 or not np.any(active):
        return np.zeros_like(mu)
    if rho <= 0:
        return np.where(active, p_max, 0.0)
    m = np.where(active, mu, 1.0)
    e = np.where(active, eta, 1.0)
    spread = (m - e) / (2 * m * e)
    offset = 1 / (2 * e) + 1 / (2 * m)
    root = np.sqrt(spread * spread + (m - e) / (m * e * rho))
    power = (m - e - rho) / (m * e * rho * (root + offset))
    return np.where(active, np.clip(power, 0.0, p_max), 0.0)


def solve_rho(
    mu_row: FloatArray,
    eta_row: FloatArray,
    constraints: PowerConstraints,
) -> DualSolve:
    """Finds the dual price meeting one user's average power limit.

    Args:
        mu_row (FloatArray): Gains towards the UAV per slot, `(N,)`.
        eta_row (FloatArray): Gains towards the strongest eavesdropper
            per slot, `(N,)`.
        constraints (PowerConstraints): Power limits.

    Returns:
        DualSolve: Price, resulting powers and bisection record.
    """
    mu_row = np.asarray(mu_row, dtype=np.float64)
    eta_row = np.asarray(eta_row, dtype=np.float64)
    if mu_row.shape != eta_row.shape or mu_row.ndim != 1 or not mu_row.size:
        raise ValueError(
            f'Gain rows must be equal non-empty vectors: '
            f'{mu_row.shape} vs {eta_row.shape}',
        )
    p_avg, p_max = constraints.p_avg, constraints.p_max

    powers = powers_given_rho(mu_row, eta_row, 0.0, p_max)
    average = float(powers.mean())
    if average <= p_avg:
        return DualSolve(0.0, average, 0, 0.0, powers)

    if p_avg <= 0:
        # Any price above the largest gain gap switches every slot off
        rho = float(np.max(mu_row - eta_row))
        zeros = np.zeros_like(mu_row)
        return DualSolve(rho, 0.0, 0, 0.0, zeros)

    rho_hi = float(np.max(mu_row))
    while powers_given_rho(mu_row, eta_row, rho_hi, p_max).mean() > p_avg:
        rho_hi *= 2
    lo, hi = 0.0, rho_hi
    powers = powers_given_rho(mu_row, eta_row, hi, p_max)
    iterations = 0
    for iterations in range(1, MAX_BISECTION_STEPS + 1):
        mid = 0.5 * (lo + hi)
        candidate = powers_given_rho(mu_row, eta_row, mid, p_max)
        mean = float(candidate.mean())
        if mean > p_avg:
            lo = mid
        else:
            # The upper end always stays feasible
            hi, powers = mid, candidate
            if p_avg - mean <= POWER_RTOL * p_avg:
                break
        if hi - lo <= INTERVAL_RTOL * rho_hi:
            break

    average = float(powers.mean())
    return DualSolve(hi, average, iterations, p_avg - average, powers)


def optimize_powers(
    scenario: Scenario,
    trajectory: UavTrajectory,
    prev_powers: PowerPolicy,
    params: ChannelParams,
    constraints: PowerConstraints,
) -> PowerPolicy:
    """Updates all powers for a fixed trajectory.

    The strongest eavesdropper of every slot is taken at `prev_powers`.
    An update that lowers the unclamped objective (possible when the
    strongest eavesdropper changes) is rejected.

    Args:
        scenario (Scenario): Scenario geometry.
        trajectory (UavTrajectory): Fixed UAV positions.
        prev_powers (PowerPolicy): Current feasible powers.
        params (ChannelParams): Channel parameters.
        constraints (PowerConstraints): Power limits.

    Returns:
        PowerPolicy: New powers, or `prev_powers` when rejected.
    """
    gains = compute_link_gains(scenario, trajectory, params)
    worst = worst_eavesdroppers(prev_powers.powers, gains)
    slots = np.arange(scenario.num_slots)
    powers = np.empty_like(prev_powers.powers)
    for user in range(scenario.num_users):
        eta_row = gains.eta[user, worst, slots]
        solve = solve_rho(gains.mu[user], eta_row, constraints)
        powers[user] = solve.powers
        _logger.debug(
            'User %d: rho=%.6g avg=%.6g steps=%d',
            user,
            solve.rho,
            solve.avg_power_achieved,
            solve.iterations,
        )
    policy = PowerPolicy(powers, constraints)

    before = objective_p2(trajectory, prev_powers, scenario, params)
    after = objective_p2(trajectory, policy, scenario, params)
    if after < before:
        _logger.debug(
            'Rejected power update: objective %.12g -> %.12g',
            before,
            after,
        )
        return prev_powers
    return policy
