"""Tests for secure water-filling and the dual bisection."""

import numpy as np
import pytest

from secrelay.model import ConstraintError
from secrelay.model import PowerConstraints
from secrelay.model import PowerPolicy
from secrelay.model import UavTrajectory
from secrelay.model import compute_link_gains
from secrelay.model import objective_p2
from secrelay.model import optimize_powers
from secrelay.model import power_given_rho
from secrelay.model import solve_rho
from secrelay.model.power_opt import powers_given_rho


def stationarity(mu, eta, power, rho):
    return mu / (1 + mu * power) - eta / (1 + eta * power) - rho


@pytest.mark.parametrize('rho', [0.0, 0.1, 5.0])
def test_no_power_when_eavesdropper_is_stronger(rho):
    assert power_given_rho(1.0, 2.0, rho, 1.0) == 0.0


def test_no_power_on_tie():
    assert power_given_rho(2.0, 2.0, 0.1, 1.0) == 0.0


def test_analytic_instance():
    power = power_given_rho(2.0, 1.0, 0.1, 10.0)

    assert power == pytest.approx(1.5, abs=1e-12)
    assert abs(stationarity(2.0, 1.0, power, 0.1)) < 1e-12


def test_zero_price_saturates_peak():
    assert power_given_rho(2.0, 1.0, 0.0, 0.7) == 0.7


def test_stationarity_on_random_triples():
    rng = np.random.default_rng(0)
    size = 100_000
    eta = 10 ** rng.uniform(-2, 1, size)
    mu = eta * (1 + 10 ** rng.uniform(-2, 1, size))
    rho = 10 ** rng.uniform(-3, 0, size) * (mu - eta)
    p_max = 10 ** rng.uniform(-1, 2, size)

    powers = np.array(
        [power_given_rho(*args) for args in zip(mu, eta, rho, p_max)],
    )

    inside = (powers > 0) & (powers < p_max)
    assert inside.sum() > size // 10
    residual = stationarity(mu, eta, powers, rho)[inside]
    assert np.max(np.abs(residual)) <= 1e-8
    assert np.all(powers >= 0)
    assert np.all(powers <= p_max)


def test_power_non_increasing_in_price():
    rng = np.random.default_rng(1)
    prices = np.linspace(0, 3, 200)
    for _ in range(100):
        eta = rng.uniform(0.01, 5)
        mu = eta + rng.uniform(0.01, 5)
        powers = [power_given_rho(mu, eta, rho, 2.0) for rho in prices]

        assert np.all(np.diff(powers) <= 0)


def test_vectorized_matches_scalar():
    rng = np.random.default_rng(2)
    mu = rng.uniform(0, 5, 50)
    eta = rng.uniform(0, 5, 50)

    vector = powers_given_rho(mu, eta, 0.3, 1.5)

    for n in range(50):
        assert vector[n] == pytest.approx(
            power_given_rho(mu[n], eta[n], 0.3, 1.5),
            rel=1e-12,
            abs=1e-15,
        )


def test_solve_rho_peak_meets_average():
    solve = solve_rho(np.array([2.0]), np.array([1.0]), PowerConstraints(1, 1))

    assert solve.rho == 0.0
    np.testing.assert_array_equal(solve.powers, [1.0])


def test_solve_rho_inverts_analytic_instance():
    solve = solve_rho(
        np.array([2.0]),
        np.array([1.0]),
        PowerConstraints(p_avg=1.5, p_max=10.0),
    )

    assert solve.rho == pytest.approx(0.1, rel=1e-6)
    assert solve.powers[0] == pytest.approx(1.5, rel=1e-8)
    assert solve.powers[0] <= 1.5


def test_solve_rho_all_slots_silent():
    solve = solve_rho(
        np.array([1.0, 0.5]),
        np.array([2.0, 0.5]),
        PowerConstraints(0.1, 0.2),
    )

    assert solve.rho == 0.0
    np.testing.assert_array_equal(solve.powers, [0.0, 0.0])


def test_solve_rho_zero_budget():
    solve = solve_rho(
        np.array([5.0, 1.0]),
        np.array([1.0, 2.0]),
        PowerConstraints(0.0, 0.0),
    )

    np.testing.assert_array_equal(solve.powers, [0.0, 0.0])
    assert solve.avg_power_achieved == 0.0


def test_solve_rho_rejects_mismatched_rows():
    with pytest.raises(ValueError):
        solve_rho(np.ones(3), np.ones(2), PowerConstraints(0.1, 0.2))


def test_solve_rho_random_rows():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        n = int(rng.integers(1, 11))
        mu = 10 ** rng.uniform(-1, 3, n)
        eta = mu * rng.uniform(0, 1.5, n)
        p_max = rng.uniform(0.1, 2.0)
        p_avg = p_max * rng.uniform(0.05, 1.0)
        constraints = PowerConstraints(p_avg, p_max)

        solve = solve_rho(mu, eta, constraints)

        average = solve.powers.mean()
        assert solve.rho >= 0
        assert average <= p_avg * (1 + 1e-9)
        assert abs(solve.rho * (p_avg - average)) <= (
            1e-6 * p_avg * max(solve.rho, 1.0)
        )
        assert np.all(solve.powers >= 0)
        assert np.all(solve.powers <= p_max)


def test_single_slot_matches_line_search():
    rng = np.random.default_rng(4)
    grid = np.linspace(0, 1, 1_000_001)
    for _ in range(5):
        eta = rng.uniform(0.5, 5)
        mu = eta * rng.uniform(1.1, 10)
        p_avg = rng.uniform(0.05, 0.9)
        constraints = PowerConstraints(p_avg, 1.0)

        solve = solve_rho(np.array([mu]), np.array([eta]), constraints)

        def value(p):
            return np.log1p(mu * p) - np.log1p(eta * p)

        feasible = grid[grid <= p_avg]
        best = feasible[np.argmax(value(feasible))]
        assert solve.powers[0] == pytest.approx(best, abs=2e-6)


def test_policy_constraints_validation():
    with pytest.raises(ConstraintError):
        PowerConstraints(p_avg=0.3, p_max=0.2)
    with pytest.raises(ConstraintError):
        PowerConstraints(p_avg=-0.1, p_max=0.2)


def test_optimize_powers_is_feasible_and_guarded(
    make_scenario,
    params,
    constraints,
):
    for seed in range(30):
        scenario = make_scenario(seed)
        trajectory = UavTrajectory.at_cluster_centers(scenario)
        prev = PowerPolicy.uniform(
            constraints,
            scenario.num_users,
            scenario.num_slots,
        )

        policy = optimize_powers(scenario, trajectory, prev, params, constraints)

        assert policy.is_feasible(1e-9)
        assert objective_p2(trajectory, policy, scenario, params) >= (
            objective_p2(trajectory, prev, scenario, params) - 1e-12
        )


def test_optimize_powers_single_eavesdropper_never_rejects(
    make_scenario,
    params,
    constraints,
):
    for seed in range(100):
        scenario = make_scenario(seed, num_eavesdroppers=1)
        trajectory = UavTrajectory.at_cluster_centers(scenario)
        prev = PowerPolicy.uniform(
            constraints,
            scenario.num_users,
            scenario.num_slots,
        )

        policy = optimize_powers(scenario, trajectory, prev, params, constraints)

        gains = compute_link_gains(scenario, trajectory, params)
        for user in range(scenario.num_users):
            expected = solve_rho(gains.mu[user], gains.eta[user, 0], constraints)
            np.testing.assert_allclose(
                policy.powers[user],
                expected.powers,
                atol=1e-9,
            )


def test_optimize_powers_fixed_point(make_scenario, params, constraints):
    scenario = make_scenario(8, num_eavesdroppers=1)
    trajectory = UavTrajectory.at_cluster_centers(scenario)
    prev = PowerPolicy.uniform(constraints, scenario.num_users, scenario.num_slots)

    once = optimize_powers(scenario, trajectory, prev, params, constraints)
    twice = optimize_powers(scenario, trajectory, once, params, constraints)

    np.testing.assert_allclose(twice.powers, once.powers, atol=1e-9)


def test_optimize_powers_silences_exposed_users(params, constraints, one_slot):
    # Eavesdropper next to the only user, UAV far above
    scenario = one_slot([[0, 0, 0]], [[1, 0, 0]], altitude=50.0)
    trajectory = UavTrajectory(np.zeros((1, 2)), 50.0)
    prev = PowerPolicy.uniform(constraints, 1, 1)

    policy = optimize_powers(scenario, trajectory, prev, params, constraints)

    np.testing.assert_array_equal(policy.powers, [[0.0]])
