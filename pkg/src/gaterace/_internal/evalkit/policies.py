from pathlib import Path
from typing import Protocol, Sequence, Union

import numpy as np

from ..common import FloatArray, Mode
from ..neural.checkpoint import load_params
from ..neural.network import NetworkSpec, forward
from ..neural.params import ParameterSet
from ..raceenv.env import StepResult
from ..raceenv.observation import ACTION_SIZE
from ..raceenv.vector import stack_observations


class Policy(Protocol):
    def act(self, step: int, results: Sequence[StepResult]) -> FloatArray:
        """Normalized actions of shape ``(len(results), 4)`` for the observations in ``results``"""


class NetworkPolicy:
    """Deterministic policy, acts with the clipped Gaussian mean"""

    def __init__(self, params: ParameterSet, spec: NetworkSpec):
        self.params = params
        self.spec = spec

    @classmethod
    def from_checkpoint(cls, path: Union[str, Path], mode: Mode) -> "NetworkPolicy":
        spec = NetworkSpec(mode=mode)
        return cls(load_params(path, spec), spec)

    def act(self, step: int, results: Sequence[StepResult]) -> FloatArray:
        output = forward(self.params, self.spec, stack_observations(results))
        return np.clip(output.mean.astype(np.float64), -1.0, 1.0)


class ReplayPolicy:
    """Open-loop replay of a fixed action sequence, the last action is held once it runs out"""

    def __init__(self, actions):
        self.actions = np.atleast_2d(np.asarray(actions, dtype=np.float64))
        if self.actions.shape[1] != ACTION_SIZE or self.actions.shape[0] == 0:
            raise ValueError(f"actions must have shape (T, {ACTION_SIZE}) with T > 0, got {self.actions.shape}")

    def act(self, step: int, results: Sequence[StepResult]) -> FloatArray:
        action = self.actions[min(step, len(self.actions) - 1)]
        return np.tile(action, (len(results), 1))
