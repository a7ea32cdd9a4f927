from dataclasses import dataclass, fields

from ..common import Mode
from ..errors import InvalidParametersError


@dataclass(frozen=True)
class RewardConfig:
    lambda1: float = 0.5
    lambda2: float = 0.025
    lambda3: float = 0.0005
    lambda4: float = 0.0002
    pass_base: float = 1.0
    crash_penalty: float = 4.0
    terminal_reward_acyclic: float = 10.0

    def __post_init__(self):
        negative = [fld.name for fld in fields(self) if not getattr(self, fld.name) >= 0]
        if negative:
            raise InvalidParametersError("RewardConfig", f"constants must be >= 0: {', '.join(negative)}")


@dataclass(frozen=True)
class EnvConfig:
    """Episode lifecycle settings.

    ``buffer_insertion`` admits states of well-centered passes into the initial-state buffer,
    evaluation switches it off.
    """

    mode: Mode = Mode.PIXEL_ASYM
    episode_steps: int = 1500
    dt: float = 0.02
    substeps: int = 1
    drone_radius: float = 0.15
    buffer_capacity: int = 10
    seed_speed: float = 2.0
    corruption_frac: float = 0.10
    smoothing: float = 5.0
    history_length: int = 3
    buffer_insertion: bool = True

    def __post_init__(self):
        problems = []
        if self.episode_steps < 1:
            problems.append("episode_steps must be positive")
        if not self.dt > 0 or self.substeps < 1:
            problems.append("dt and substeps must be positive")
        if not self.drone_radius > 0:
            problems.append("drone_radius must be positive")
        if self.buffer_capacity < 1:
            problems.append("buffer_capacity must be positive")
        if not 0 <= self.corruption_frac <= 1:
            problems.append("corruption_frac must lie in [0, 1]")
        if self.history_length < 1:
            problems.append("history_length must be positive")
        if problems:
            raise InvalidParametersError("EnvConfig", "; ".join(problems))
