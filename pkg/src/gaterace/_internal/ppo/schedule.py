from dataclasses import dataclass


@dataclass(frozen=True)
class LinearSchedule:
    """Learning rate linear in collected environment steps, constant past the budget"""

    start: float
    end: float
    total_steps: int

    def __call__(self, env_steps: int) -> float:
        if self.total_steps <= 0:
            return self.start
        fraction = min(max(env_steps / self.total_steps, 0.0), 1.0)
        return self.start + fraction * (self.end - self.start)
