from dataclasses import dataclass

from ..common import VarTuple
from ..errors import InvalidParametersError


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation protocol: ``n_envs`` rollouts of at most ``steps`` control steps each.

    ``laps`` applies to cyclic tracks, an acyclic track counts one pass through all gates as success.
    """

    n_envs: int = 64
    steps: int = 1000
    laps: int = 3
    start_jitter: float = 0.1
    magnitudes: VarTuple[float] = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)

    def __post_init__(self):
        problems = []
        if self.n_envs < 1 or self.steps < 1 or self.laps < 1:
            problems.append("n_envs, steps and laps must be positive")
        if self.start_jitter < 0:
            problems.append("start_jitter must be >= 0")
        if any(magnitude < 0 for magnitude in self.magnitudes):
            problems.append("displacement magnitudes must be >= 0")
        if problems:
            raise InvalidParametersError("EvalConfig", "; ".join(problems))
