"""This module runs the alternating trajectory and power optimization.

Every outer iteration first moves the UAV for fixed powers, then
updates the powers for the fixed trajectory, and records the average
unclamped secrecy rate. Both updates never lower that rate, so the trace
is non-decreasing. Slots that still end with a negative rate are switched
off at the end, which turns the unclamped rate into the clamped one
without changing its value.
"""

import dataclasses

import numpy as np

from secrelay.log import get_logger

from .channel import ChannelDiagnostics
from .channel import compute_link_gains
from .channel import objective_p1
from .channel import objective_p2
from .channel import slot_taus
from .exceptions import ConstraintError
from .position_opt import check_clearance
from .position_opt import optimize_trajectory
from .power_opt import optimize_powers
from .scenario import check_scenario
from .types import ChannelParams
from .types import InitialPowers
from .types import InitialTrajectory
from .types import PowerConstraints
from .types import PowerPolicy
from .types import Scenario
from .types import SolverConfig
from .types import SolveResult
from .types import Strategy
from .types import UavTrajectory

EPSILON = 1e-15
"""Floor of the relative-improvement denominator."""

FEASIBILITY_TOL = 1e-9

_logger = get_logger(__name__)


def zero_negative_slots(
    trajectory: UavTrajectory,
    powers: PowerPolicy,
    scenario: Scenario,
    params: ChannelParams,
) -> tuple[PowerPolicy, float, list[tuple[int, int]]]:
    """Switches every user off in slots with a negative secrecy rate.

    The clamped objective is unchanged, and afterwards the clamped and
    unclamped objectives coincide.

    Args:
        trajectory (UavTrajectory): UAV positions.
        powers (PowerPolicy): Transmit powers.
        scenario (Scenario): Scenario geometry.
        params (ChannelParams): Channel parameters.

    Returns:
        tuple[PowerPolicy, float, list[tuple[int, int]]]: New powers, their
            clamped objective, and the `(user, slot)` pairs that were
            switched off.
    """
    negative = slot_taus(trajectory, powers, scenario, params) < 0
    slots = np.flatnonzero(negative)
    zeroed = [
        (int(user), int(slot))
        for user, slot in np.argwhere(powers.powers > 0)
        if negative[slot]
    ]

    new_powers = powers.powers.copy()
    new_powers[:, negative] = 0.0
    policy = PowerPolicy(new_powers, powers.constraints)
    if zeroed:
        _logger.debug('Switched off slots %s', slots.tolist())
    return policy, objective_p1(trajectory, policy, scenario, params), zeroed


def run_alternating_optimization(
    scenario: Scenario,
    params: ChannelParams,
    constraints: PowerConstraints,
    config: SolverConfig | None = None,
) -> SolveResult:
    """Jointly optimizes the UAV trajectory and the transmit powers.

    Args:
        scenario (Scenario): Scenario geometry.
        params (ChannelParams): Channel parameters.
        constraints (PowerConstraints): Power limits.
        config (SolverConfig | None, optional): Stopping rule and start.
            Defaults to `SolverConfig()`.

    Raises:
        ScenarioError: The scenario is malformed.
        ConstraintError: The starting point is infeasible.

    Returns:
        SolveResult: Final iterate and convergence record.
    """
    return _run_block_descent(
        scenario,
        params,
        constraints,
        config or SolverConfig(),
        strategy=Strategy.JOINT,
    )


def run_baseline(
    scenario: Scenario,
    params: ChannelParams,
    constraints: PowerConstraints,
    strategy: Strategy,
    config: SolverConfig | None = None,
) -> SolveResult:
    """Runs one mitigation strategy.

    Args:
        scenario (Scenario): Scenario geometry.
        params (ChannelParams): Channel parameters.
        constraints (PowerConstraints): Power limits.
        strategy (Strategy): Strategy to run.
        config (SolverConfig | None, optional): Stopping rule. Defaults to
            `SolverConfig()`.

    Returns:
        SolveResult: Strategy outcome.
    """
    config = config or SolverConfig()
    match strategy:
        case Strategy.FIXED_FULL:
            return _fixed_full(scenario, params, constraints)
        case Strategy.POSITION_ONLY:
            return _run_block_descent(
                scenario,
                params,
                constraints,
                config,
                strategy=strategy,
                adapt_power=False,
            )
        case Strategy.POWER_ONLY:
            return _run_block_descent(
                scenario,
                params,
                constraints,
                config,
                strategy=strategy,
                move_uav=False,
            )
        case Strategy.JOINT:
            return compare_strategies(scenario, params, constraints, config)[
                Strategy.JOINT
            ]
    raise ValueError(f'Unknown strategy: {strategy!r}')


def compare_strategies(
    scenario: Scenario,
    params: ChannelParams,
    constraints: PowerConstraints,
    config: SolverConfig | None = None,
) -> dict[Strategy, SolveResult]:
    """Runs all strategies on the same scenario.

    The joint strategy is started from the default point and from the end
    point of every single-block strategy, the best clamped objective wins.
    Since each run never lowers its objective, the joint result is never
    worse than any other strategy.

    Args:
        scenario (Scenario): Scenario geometry.
        params (ChannelParams): Channel parameters.
        constraints (PowerConstraints): Power limits.
        config (SolverConfig | None, optional): Stopping rule. Defaults to
            `SolverConfig()`.

    Returns:
        dict[Strategy, SolveResult]: Results in `Strategy` order.
    """
    config = config or SolverConfig()
    results = {
        strategy: run_baseline(scenario, params, constraints, strategy, config)
        for strategy in Strategy
        if strategy is not Strategy.JOINT
    }

    best = run_alternating_optimization(scenario, params, constraints, config)
    for start, baseline in results.items():
        warm_config = dataclasses.replace(
            config,
            initial_trajectory=InitialTrajectory.CUSTOM,
            initial_powers=InitialPowers.CUSTOM,
            custom_trajectory=baseline.trajectory,
            custom_powers=baseline.powers,
        )
        candidate = _run_block_descent(
            scenario,
            params,
            constraints,
            warm_config,
            strategy=Strategy.JOINT,
        )
        if candidate.p1_objective > best.p1_objective:
            candidate.warm_start = start
            best = candidate
    _logger.info(
        'Joint strategy: p1=%.6g, warm start %s',
        best.p1_objective,
        best.warm_start or 'none',
    )
    results[Strategy.JOINT] = best
    return results


def _fixed_full(
    scenario: Scenario,
    params: ChannelParams,
    constraints: PowerConstraints,
) -> SolveResult:
    """UAV above the cluster center with constant power."""
    check_scenario(scenario)
    trajectory = UavTrajectory.at_cluster_centers(scenario)
    powers = PowerPolicy.uniform(
        constraints,
        scenario.num_users,
        scenario.num_slots,
    )
    start = objective_p2(trajectory, powers, scenario, params)
    powers, p1, zeroed = zero_negative_slots(
        trajectory,
        powers,
        scenario,
        params,
    )
    return SolveResult(
        trajectory=trajectory,
        powers=powers,
        objective_trace=[start],
        p1_objective=p1,
        iterations=0,
        converged=False,
        zeroed_slots=zeroed,
        strategy=Strategy.FIXED_FULL,
        num_eavesdroppers=scenario.num_eavesdroppers,
        clamped=_count_clamped(scenario, trajectory, params),
    )


def _run_block_descent(
    scenario: Scenario,
    params: ChannelParams,
    constraints: PowerConstraints,
    config: SolverConfig,
    *,
    strategy: Strategy,
    move_uav: bool = True,
    adapt_power: bool = True,
) -> SolveResult:
    """Alternating optimization loop with optionally frozen blocks."""
    check_scenario(scenario)
    check_clearance(scenario, params)
    trajectory, powers = _initial_point(scenario, constraints, config)

    previous = objective_p2(trajectory, powers, scenario, params)
    trace = [previous]
    converged = False
    rejections = 0
    iterations = 0
    for iterations in range(1, config.max_iterations + 1):
        if move_uav:
            trajectory = optimize_trajectory(
                scenario,
                trajectory,
                powers,
                params,
            )
        if adapt_power:
            updated = optimize_powers(
                scenario,
                trajectory,
                powers,
                params,
                constraints,
            )
            if updated is powers:
                rejections += 1
            powers = updated

        current = objective_p2(trajectory, powers, scenario, params)
        trace.append(current)
        improvement = (current - previous) / max(abs(current), EPSILON)
        _logger.debug(
            'Iteration %d: objective %.12g, relative improvement %.3g',
            iterations,
            current,
            improvement,
        )
        previous = current
        if improvement < config.chi:
            converged = True
            break

    powers, p1, zeroed = zero_negative_slots(
        trajectory,
        powers,
        scenario,
        params,
    )
    _logger.info(
        'Strategy %s: p1=%.6g after %d iterations (converged=%s)',
        strategy,
        p1,
        iterations,
        converged,
    )
    return SolveResult(
        trajectory=trajectory,
        powers=powers,
        objective_trace=trace,
        p1_objective=p1,
        iterations=iterations,
        converged=converged,
        zeroed_slots=zeroed,
        strategy=strategy,
        num_eavesdroppers=scenario.num_eavesdroppers,
        guard_rejections=rejections,
        clamped=_count_clamped(scenario, trajectory, params),
    )


def _count_clamped(
    scenario: Scenario,
    trajectory: UavTrajectory,
    params: ChannelParams,
) -> int:
    """Number of link distances clamped to `d_min` at the returned point."""
    diagnostics = ChannelDiagnostics()
    compute_link_gains(scenario, trajectory, params, diagnostics)
    return diagnostics.clamped


def _initial_point(
    scenario: Scenario,
    constraints: PowerConstraints,
    config: SolverConfig,
) -> tuple[UavTrajectory, PowerPolicy]:
    """Builds and checks the starting trajectory and powers.

    Raises:
        ConstraintError: A custom starting point is infeasible.
    """
    m, n = scenario.num_users, scenario.num_slots
    if config.initial_trajectory is InitialTrajectory.CUSTOM:
        assert config.custom_trajectory is not None
        trajectory = config.custom_trajectory.copy()
        if trajectory.positions.shape != (n, 2):
            raise ConstraintError(
                f"Initial trajectory must have shape {(n, 2)}",
            )
        offsets = trajectory.positions - scenario.cluster_center
        if np.any(
            np.hypot(offsets[:, 0], offsets[:, 1])
            > scenario.radius + FEASIBILITY_TOL,
        ):
            raise ConstraintError('Initial trajectory violates the disk limit')
        trajectory.altitude = scenario.altitude
    else:
        trajectory = UavTrajectory.at_cluster_centers(scenario)

    if config.initial_powers is InitialPowers.CUSTOM:
        assert config.custom_powers is not None
        powers = PowerPolicy(config.custom_powers.powers.copy(), constraints)
        if powers.powers.shape != (m, n) or not powers.is_feasible(
            FEASIBILITY_TOL,
        ):
            raise ConstraintError('Initial powers violate the power limits')
    else:
        powers = PowerPolicy.uniform(constraints, m, n)
    return trajectory, powers
