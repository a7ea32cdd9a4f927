import math
from dataclasses import dataclass

import numpy as np

from ..common import FloatArray

HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
HALF_LOG_2PI_E = 0.5 * math.log(2 * math.pi * math.e)


def gaussian_log_prob(x: FloatArray, mean: FloatArray, log_std: FloatArray) -> FloatArray:
    """Log-density of a diagonal Gaussian summed over the last axis"""
    z = (x - mean) * np.exp(-log_std)
    return np.sum(-0.5 * z * z - log_std - HALF_LOG_2PI, axis=-1)


def gaussian_log_prob_grads(x: FloatArray, mean: FloatArray, log_std: FloatArray):
    """Partial derivatives of ``gaussian_log_prob`` with respect to ``mean`` and ``log_std``"""
    z = (x - mean) * np.exp(-log_std)
    return z * np.exp(-log_std), z * z - 1.0


def gaussian_entropy(log_std: FloatArray) -> float:
    return float(np.sum(np.asarray(log_std, dtype=np.float64) + HALF_LOG_2PI_E))


@dataclass(frozen=True, eq=False)
class ActionSample:
    """``action`` is clipped to the box, ``log_prob`` belongs to the unclipped ``raw`` draw"""

    action: FloatArray
    raw: FloatArray
    log_prob: FloatArray


def sample_action(
    mean: FloatArray,
    log_std: FloatArray,
    rng: np.random.Generator,
    deterministic: bool = False,
) -> ActionSample:
    mean = np.asarray(mean, dtype=np.float64)
    log_std = np.broadcast_to(np.asarray(log_std, dtype=np.float64), mean.shape)
    if deterministic:
        raw = mean.copy()
    else:
        raw = mean + np.exp(log_std) * rng.standard_normal(mean.shape)
    return ActionSample(
        action=np.clip(raw, -1.0, 1.0),
        raw=raw,
        log_prob=gaussian_log_prob(raw, mean, log_std),
    )
