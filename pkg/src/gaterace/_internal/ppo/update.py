import logging
from dataclasses import dataclass, fields
from typing import Optional, Tuple

import numpy as np

from ..common import FloatArray
from ..errors import NumericalAbortError
from ..neural.distribution import gaussian_entropy, gaussian_log_prob, gaussian_log_prob_grads
from ..neural.network import NetworkSpec, OutputGradients, backward, forward_with_cache
from ..neural.params import ParameterSet
from ..raceenv.vector import ObservationBatch
from .config import PpoConfig
from .gae import normalize_advantages
from .optim import Adam, clip_grad_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RolloutBatch:
    """Flat transitions of one collection round.

    ``actions`` are the unclipped Gaussian draws the log-probabilities refer to.
    Rewards of truncated episodes already include the discounted tail value.
    """

    masks: Optional[FloatArray]
    history: FloatArray
    full_state: FloatArray
    actions: FloatArray
    log_probs: FloatArray
    rewards: FloatArray
    values: FloatArray
    dones: FloatArray
    advantages: FloatArray
    returns: FloatArray

    def __len__(self) -> int:
        return self.actions.shape[0]

    def take(self, index) -> "RolloutBatch":
        return RolloutBatch(
            **{
                fld.name: None if getattr(self, fld.name) is None else getattr(self, fld.name)[index]
                for fld in fields(self)
            },
        )

    @property
    def observations(self) -> ObservationBatch:
        return ObservationBatch(masks=self.masks, history=self.history, full_state=self.full_state)


@dataclass(frozen=True)
class UpdateStats:
    policy_loss: float
    value_loss: float
    entropy: float
    clip_frac: float
    approx_kl: float
    grad_norm: float


def clipped_surrogate(ratio: FloatArray, advantages: FloatArray, clip: float) -> FloatArray:
    return np.minimum(ratio * advantages, np.clip(ratio, 1 - clip, 1 + clip) * advantages)


@dataclass
class _MinibatchTotals:
    surrogate: float = 0.0
    value_loss: float = 0.0
    clipped: int = 0
    kl: float = 0.0


def _chunk_gradient(
    params: ParameterSet,
    spec: NetworkSpec,
    chunk: RolloutBatch,
    advantages: FloatArray,
    scale: float,
    config: PpoConfig,
    totals: _MinibatchTotals,
) -> FloatArray:
    output, cache = forward_with_cache(params, spec, chunk.observations)
    mean = output.mean.astype(np.float64)
    log_std = output.log_std.astype(np.float64)
    value = output.value.astype(np.float64)

    log_prob = gaussian_log_prob(chunk.actions, mean, log_std)
    log_ratio = log_prob - chunk.log_probs
    ratio = np.exp(log_ratio)
    surrogate = clipped_surrogate(ratio, advantages, config.clip)
    value_error = value - chunk.returns

    totals.surrogate += float(surrogate.sum())
    totals.value_loss += float(np.square(value_error).sum())
    totals.clipped += int(np.count_nonzero(np.abs(ratio - 1) > config.clip))
    totals.kl += float(np.sum((ratio - 1) - log_ratio))

    unclipped = ratio * advantages <= np.clip(ratio, 1 - config.clip, 1 + config.clip) * advantages
    d_log_prob = -scale * np.where(unclipped, advantages * ratio, 0.0)
    d_mean, d_log_std = gaussian_log_prob_grads(chunk.actions, mean, log_std)
    output_grads = OutputGradients(
        mean=d_log_prob[:, None] * d_mean,
        log_std=d_log_prob[:, None] * d_log_std,
        value=config.value_coef * 2.0 * scale * value_error,
    )
    return backward(params, spec, cache, output_grads).flat.astype(np.float64)


def ppo_update(
    params: ParameterSet,
    spec: NetworkSpec,
    batch: RolloutBatch,
    config: PpoConfig,
    optimizer: Adam,
    lr: float,
    rng: np.random.Generator,
    env_steps: int = 0,
) -> Tuple[ParameterSet, UpdateStats]:
    """Clipped-surrogate epochs over shuffled minibatches.

    Minibatches are processed in chunks whose gradients are summed in a fixed order,
    the result does not depend on the chunk size beyond floating point rounding.
    """
    advantages = normalize_advantages(batch.advantages)
    n = len(batch)
    minibatch = min(config.minibatch, n)
    scale = 1.0 / minibatch

    policy_sum = value_sum = kl_sum = entropy_sum = grad_norm_sum = 0.0
    clipped_sum = 0
    n_steps = 0
    for epoch in range(config.epochs):
        order = rng.permutation(n)
        for start in range(0, n - minibatch + 1, minibatch):
            indices = order[start:start + minibatch]
            totals = _MinibatchTotals()
            grad = np.zeros(params.layout.size)
            for chunk_start in range(0, minibatch, config.chunk_size):
                chunk_indices = indices[chunk_start:chunk_start + config.chunk_size]
                grad += _chunk_gradient(
                    params, spec, batch.take(chunk_indices), advantages[chunk_indices], scale, config, totals,
                )

            log_std = params["log_std"].astype(np.float64)
            entropy = gaussian_entropy(log_std)
            grad[params.layout["log_std"].slice] -= config.entropy_coef
            policy_loss = -totals.surrogate * scale
            value_loss = totals.value_loss * scale
            loss = policy_loss + config.value_coef * value_loss - config.entropy_coef * entropy
            if not (np.isfinite(loss) and np.all(np.isfinite(grad))):
                diagnostics = {
                    "epoch": epoch,
                    "minibatch_start": start,
                    "policy_loss": policy_loss,
                    "value_loss": value_loss,
                    "entropy": entropy,
                    "log_std": log_std.tolist(),
                    "max_abs_param": float(np.max(np.abs(params.flat))),
                }
                logger.error("Non-finite loss at %d env steps: %s", env_steps, diagnostics)
                raise NumericalAbortError(env_steps=env_steps, diagnostics=diagnostics)

            grad, norm = clip_grad_norm(grad, config.max_grad_norm)
            params = params.with_flat(optimizer.step(params.flat, grad, lr))

            policy_sum += policy_loss
            value_sum += value_loss
            clipped_sum += totals.clipped
            kl_sum += totals.kl * scale
            entropy_sum += entropy
            grad_norm_sum += norm
            n_steps += 1

    stats = UpdateStats(
        policy_loss=policy_sum / n_steps,
        value_loss=value_sum / n_steps,
        entropy=entropy_sum / n_steps,
        clip_frac=clipped_sum / (n_steps * minibatch),
        approx_kl=kl_sum / n_steps,
        grad_norm=grad_norm_sum / n_steps,
    )
    return params, stats
