from dataclasses import dataclass

from ..errors import InvalidParametersError


@dataclass(frozen=True)
class PpoConfig:
    """Training hyperparameters.

    ``batch`` must equal ``n_envs * rollout_steps``; acyclic tracks usually train with ``gamma = 0.98``.
    ``checkpoint_every`` counts updates, 0 writes only the final checkpoint.
    """

    lr_start: float = 3e-4
    lr_end: float = 1e-5
    gamma: float = 0.995
    gae_lambda: float = 0.95
    epochs: int = 10
    clip: float = 0.2
    entropy_coef: float = 0.001
    value_coef: float = 0.5
    n_envs: int = 100
    rollout_steps: int = 250
    batch: int = 25000
    minibatch: int = 6250
    total_steps: int = 2_000_000
    max_grad_norm: float = 0.5
    chunk_size: int = 512
    checkpoint_every: int = 20

    def __post_init__(self):
        problems = []
        if not 0 < self.gamma <= 1:
            problems.append("gamma must lie in (0, 1]")
        if not 0 <= self.gae_lambda <= 1:
            problems.append("gae_lambda must lie in [0, 1]")
        if self.minibatch < 1 or self.batch % self.minibatch != 0:
            problems.append("batch must be divisible by minibatch")
        if self.n_envs * self.rollout_steps != self.batch:
            problems.append("batch must equal n_envs * rollout_steps")
        if self.epochs < 1 or self.chunk_size < 1:
            problems.append("epochs and chunk_size must be positive")
        if self.total_steps < 0:
            problems.append("total_steps must be >= 0")
        if not (self.lr_start > 0 and self.lr_end > 0):
            problems.append("learning rates must be positive")
        if not self.clip > 0 or not self.max_grad_norm > 0:
            problems.append("clip and max_grad_norm must be positive")
        if self.entropy_coef < 0 or self.value_coef < 0:
            problems.append("loss coefficients must be >= 0")
        if self.checkpoint_every < 0:
            problems.append("checkpoint_every must be >= 0")
        if problems:
            raise InvalidParametersError("PpoConfig", "; ".join(problems))

    @property
    def n_minibatches(self) -> int:
        return self.batch // self.minibatch
