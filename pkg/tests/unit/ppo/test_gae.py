import numpy as np
import pytest

from gaterace.ppo import compute_gae, normalize_advantages


def brute_force_gae(rewards, values, dones, bootstrap, gamma, gae_lambda):
    """Sums discounted TD errors forward from every step until the episode ends"""
    horizon = len(rewards)
    next_values = np.append(values[1:], bootstrap)
    deltas = [
        rewards[t] + gamma * next_values[t] * (1 - dones[t]) - values[t]
        for t in range(horizon)
    ]
    advantages = np.zeros(horizon)
    for t in range(horizon):
        weight = 1.0
        for k in range(t, horizon):
            advantages[t] += weight * deltas[k]
            if dones[k]:
                break
            weight *= gamma * gae_lambda
    return advantages


def test_single_step():
    advantages, returns = compute_gae(np.array([1.0]), np.array([0.0]), np.array([0.0]), np.array(0.0), 0.99, 0.95)

    assert advantages.tolist() == [1.0]
    assert returns.tolist() == [1.0]


def test_zero_discount_is_one_step_td(rng):
    rewards = rng.normal(size=6)
    values = rng.normal(size=6)

    advantages, _ = compute_gae(rewards, values, np.zeros(6), np.array(3.0), 0.0, 0.95)

    assert np.allclose(advantages, rewards - values, rtol=0, atol=1e-15)


@pytest.mark.parametrize("dones", [[0, 0, 0, 0, 0], [0, 1, 0, 0, 1], [1, 0, 0, 1, 0]])
def test_matches_brute_force(rng, dones):
    rewards = rng.normal(size=5)
    values = rng.normal(size=5)
    dones = np.array(dones, dtype=np.float64)

    advantages, returns = compute_gae(rewards, values, dones, np.array(0.7), 0.99, 0.9)

    expected = brute_force_gae(rewards, values, dones, 0.7, 0.99, 0.9)
    assert np.abs(advantages - expected).max() < 1e-9
    assert np.allclose(returns, expected + values, rtol=0, atol=1e-12)


def test_random_sequences_match_brute_force(rng):
    for _ in range(100):
        horizon = int(rng.integers(1, 64))
        rewards = rng.normal(size=horizon)
        values = rng.normal(size=horizon)
        dones = (rng.uniform(size=horizon) < 0.1).astype(np.float64)
        bootstrap = rng.normal()

        advantages, _ = compute_gae(rewards, values, dones, np.array(bootstrap), 0.995, 0.95)

        assert np.abs(advantages - brute_force_gae(rewards, values, dones, bootstrap, 0.995, 0.95)).max() < 1e-7


def test_environments_are_independent(rng):
    rewards = rng.normal(size=(5, 3))
    values = rng.normal(size=(5, 3))
    dones = (rng.uniform(size=(5, 3)) < 0.3).astype(np.float64)
    bootstrap = rng.normal(size=3)

    advantages, _ = compute_gae(rewards, values, dones, bootstrap, 0.995, 0.95)

    for env in range(3):
        column, _ = compute_gae(rewards[:, env], values[:, env], dones[:, env], bootstrap[env], 0.995, 0.95)
        assert np.allclose(advantages[:, env], column, rtol=0, atol=1e-12)


def test_normalized_advantages(rng):
    normalized = normalize_advantages(rng.normal(3.0, 5.0, size=1000))

    assert normalized.mean() == pytest.approx(0.0, abs=1e-12)
    assert normalized.std() == pytest.approx(1.0, abs=1e-6)


def test_constant_advantages_normalize_to_zero():
    assert not normalize_advantages(np.zeros(10)).any()
    assert normalize_advantages(np.array([4.0])).tolist() == [0.0]
