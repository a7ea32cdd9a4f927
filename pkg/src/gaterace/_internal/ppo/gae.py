from typing import Tuple

import numpy as np

from ..common import FloatArray


def compute_gae(
    rewards: FloatArray,
    values: FloatArray,
    dones: FloatArray,
    bootstrap: FloatArray,
    gamma: float,
    gae_lambda: float,
) -> Tuple[FloatArray, FloatArray]:
    """Generalized advantage estimation over time-major arrays.

    Arrays have shape ``(T,)`` or ``(T, n_envs)``. ``bootstrap`` is the value after the last step.
    A done step cuts both the value bootstrap and the advantage recursion;
    truncated episodes are expected to have the tail value folded into their last reward already.
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    not_done = 1.0 - np.asarray(dones, dtype=np.float64)
    advantages = np.zeros_like(rewards)

    next_value = np.asarray(bootstrap, dtype=np.float64)
    next_advantage = np.zeros_like(next_value)
    for t in reversed(range(rewards.shape[0])):
        delta = rewards[t] + gamma * next_value * not_done[t] - values[t]
        next_advantage = delta + gamma * gae_lambda * not_done[t] * next_advantage
        advantages[t] = next_advantage
        next_value = values[t]
    return advantages, advantages + values


def normalize_advantages(advantages: FloatArray, eps: float = 1e-8) -> FloatArray:
    advantages = np.asarray(advantages, dtype=np.float64)
    if advantages.size < 2:
        return advantages - advantages.mean()
    return (advantages - advantages.mean()) / (advantages.std() + eps)
