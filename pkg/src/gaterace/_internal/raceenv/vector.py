import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..common import FloatArray
from ..errors import CountMismatchError
from ..utils import add_note
from .env import RaceEnv, StepResult

logger = logging.getLogger(__name__)


def spawn_generators(seed: int, count: int) -> List[np.random.Generator]:
    """Independent per-environment streams, identical for a seed whatever the worker count"""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(count)]


def _call_noted(func, idx: int, env: RaceEnv, arg) -> StepResult:
    try:
        return func(env, arg)
    except Exception as exc:
        add_note(exc, f"while stepping environment {idx}")
        raise


def _step(env: RaceEnv, action) -> StepResult:
    return env.step(action)


def _step_with_reset(env: RaceEnv, action) -> StepResult:
    result = env.step(action)
    if result.done:
        logger.debug("Auto-reset after %s at t=%.2f s", result.done_reason.value, result.t)  # type: ignore[union-attr]
        result = replace(result, reset_result=env.reset())
    return result


class VectorEnv:
    """Steps many environments at once and restarts the finished ones.

    A finished environment reports its terminal result with the first result
    of the next episode attached as ``reset_result``.
    """

    def __init__(self, envs: Sequence[RaceEnv], workers: int = 1):
        self.envs = list(envs)
        self.workers = max(1, workers)
        self._executor: Optional[ThreadPoolExecutor] = None
        if self.workers > 1 and len(self.envs) > 1:
            self._executor = ThreadPoolExecutor(max_workers=self.workers, thread_name_prefix="gaterace-env")

    @classmethod
    def from_factory(
        cls,
        factory: Callable[[np.random.Generator], RaceEnv],
        count: int,
        seed: int,
        workers: int = 1,
    ) -> "VectorEnv":
        return cls([factory(rng) for rng in spawn_generators(seed, count)], workers)

    def __len__(self) -> int:
        return len(self.envs)

    def reset(self) -> List[StepResult]:
        return self._map(lambda env, _: env.reset(), range(len(self.envs)), [None] * len(self.envs))

    def step(self, actions: FloatArray) -> List[StepResult]:
        if len(actions) != len(self.envs):
            raise CountMismatchError(expected=len(self.envs), actual=len(actions))
        return self._map(_step_with_reset, range(len(self.envs)), actions)

    def step_some(self, indices: Sequence[int], actions: FloatArray) -> List[StepResult]:
        """Steps only the listed environments, finished ones are not restarted"""
        if len(actions) != len(indices):
            raise CountMismatchError(expected=len(indices), actual=len(actions))
        return self._map(_step, indices, actions)

    def _map(self, func, indices: Sequence[int], args) -> List[StepResult]:
        calls = [(idx, self.envs[idx], arg) for idx, arg in zip(indices, args)]
        if self._executor is None:
            return [_call_noted(func, *call) for call in calls]
        futures = [self._executor.submit(_call_noted, func, *call) for call in calls]
        return [future.result() for future in futures]

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown()
            self._executor = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()


@dataclass(frozen=True, eq=False)
class ObservationBatch:
    """Observations of several environments stacked for the networks"""

    masks: Optional[FloatArray]
    history: FloatArray
    full_state: FloatArray

    def __len__(self) -> int:
        return self.history.shape[0]

    def take(self, index) -> "ObservationBatch":
        return ObservationBatch(
            masks=None if self.masks is None else self.masks[index],
            history=self.history[index],
            full_state=self.full_state[index],
        )


def stack_observations(results: Sequence[StepResult]) -> ObservationBatch:
    masks = None
    if results and results[0].actor_obs.mask is not None:
        masks = np.stack([result.actor_obs.mask.pixels for result in results])  # type: ignore[union-attr]
    return ObservationBatch(
        masks=masks,
        history=np.stack([result.actor_obs.history_vector for result in results]),
        full_state=np.stack([result.full_state.vector for result in results]),
    )


def next_observations(results: Sequence[StepResult]) -> List[StepResult]:
    """Results to act on next: the reset result where an episode ended"""
    return [result.reset_result if result.reset_result is not None else result for result in results]
