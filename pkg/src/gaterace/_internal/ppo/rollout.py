import logging
from collections import deque
from dataclasses import dataclass
from typing import Deque, List, Optional

import numpy as np

from ..neural.distribution import sample_action
from ..neural.network import NetworkSpec, forward
from ..neural.params import ParameterSet
from ..raceenv.env import DoneReason, StepResult
from ..raceenv.vector import VectorEnv, next_observations, stack_observations
from .gae import compute_gae
from .update import RolloutBatch

logger = logging.getLogger(__name__)

CRASHES = (DoneReason.CRASH_GROUND, DoneReason.CRASH_GATE)


@dataclass(frozen=True)
class EpisodeRecord:
    reward: float
    length: int
    done_reason: DoneReason

    @property
    def success(self) -> bool:
        return self.done_reason not in CRASHES


@dataclass(frozen=True)
class EpisodeSummary:
    mean_reward: float
    mean_length: float
    success_rate: float
    count: int


class RolloutCollector:
    """Runs the current policy on a vector of environments and keeps per-episode bookkeeping.

    Environments are reset once on creation and then auto-reset by the vector env,
    so consecutive rounds continue the same episodes.
    """

    def __init__(self, envs: VectorEnv, spec: NetworkSpec, rng: np.random.Generator, window: int = 100):
        self.envs = envs
        self.spec = spec
        self.rng = rng
        self.episodes: Deque[EpisodeRecord] = deque(maxlen=window)
        self._current: List[StepResult] = envs.reset()
        self._returns = np.zeros(len(envs))
        self._lengths = np.zeros(len(envs), dtype=np.int64)

    def summary(self) -> EpisodeSummary:
        if not self.episodes:
            return EpisodeSummary(float("nan"), float("nan"), float("nan"), 0)
        return EpisodeSummary(
            mean_reward=float(np.mean([ep.reward for ep in self.episodes])),
            mean_length=float(np.mean([ep.length for ep in self.episodes])),
            success_rate=float(np.mean([ep.success for ep in self.episodes])),
            count=len(self.episodes),
        )

    def _track_episodes(self, results: List[StepResult]) -> None:
        for idx, result in enumerate(results):
            self._returns[idx] += result.reward
            self._lengths[idx] += 1
            if result.done:
                self.episodes.append(
                    EpisodeRecord(float(self._returns[idx]), int(self._lengths[idx]), result.done_reason),
                )
                self._returns[idx] = 0.0
                self._lengths[idx] = 0

    def collect(self, params: ParameterSet, steps: int, gamma: float, gae_lambda: float) -> RolloutBatch:
        n_envs = len(self.envs)
        masks: List[np.ndarray] = []
        history, full_state, actions, log_probs = [], [], [], []
        rewards = np.zeros((steps, n_envs))
        values = np.zeros((steps, n_envs))
        dones = np.zeros((steps, n_envs))

        for t in range(steps):
            obs = stack_observations(self._current)
            output = forward(params, self.spec, obs)
            sample = sample_action(output.mean, output.log_std, self.rng)
            results = self.envs.step(sample.action)
            self._track_episodes(results)

            rewards[t] = [result.reward for result in results]
            dones[t] = [result.done for result in results]
            truncated = [idx for idx, result in enumerate(results) if result.truncated]
            if truncated:
                tail = forward(params, self.spec, stack_observations([results[idx] for idx in truncated]))
                rewards[t, truncated] += gamma * tail.value

            if obs.masks is not None:
                masks.append(obs.masks.astype(np.float32))
            history.append(obs.history)
            full_state.append(obs.full_state)
            actions.append(sample.raw)
            log_probs.append(sample.log_prob)
            values[t] = output.value
            self._current = next_observations(results)

        bootstrap = forward(params, self.spec, stack_observations(self._current)).value
        advantages, returns = compute_gae(rewards, values, dones, bootstrap, gamma, gae_lambda)

        def flat(arrays: List[np.ndarray]) -> np.ndarray:
            stacked = np.stack(arrays)
            return stacked.reshape(steps * n_envs, *stacked.shape[2:])

        return RolloutBatch(
            masks=flat(masks) if masks else None,
            history=flat(history),
            full_state=flat(full_state),
            actions=flat(actions),
            log_probs=flat(log_probs),
            rewards=rewards.reshape(-1),
            values=values.reshape(-1),
            dones=dones.reshape(-1),
            advantages=advantages.reshape(-1),
            returns=returns.reshape(-1),
        )

    def close(self) -> None:
        self.envs.close()


def summarize(episodes: Optional[Deque[EpisodeRecord]]) -> str:
    if not episodes:
        return "no finished episodes"
    reasons = {}
    for episode in episodes:
        reasons[episode.done_reason.value] = reasons.get(episode.done_reason.value, 0) + 1
    return ", ".join(f"{name}={count}" for name, count in sorted(reasons.items()))
