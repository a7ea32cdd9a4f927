import logging
import time
from dataclasses import dataclass

from .dynamics import DEFAULT_DT, step
from .params import QuadParams
from .state import Action, QuadState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThroughputReport:
    steps: int
    seconds: float

    @property
    def steps_per_second(self) -> float:
        return self.steps / self.seconds if self.seconds > 0 else float("inf")

    def summary(self) -> str:
        return f"{self.steps} dynamics steps in {self.seconds:.3f} s: {self.steps_per_second:,.0f} steps/s"


def dynamics_benchmark(steps: int = 100_000, params: QuadParams = QuadParams()) -> ThroughputReport:
    """Single-thread throughput of controller plus integration, hovering in place"""
    state = QuadState.hover(params)
    action = Action.hover(params)
    state = step(state, action, params, DEFAULT_DT)  # compiles the kernels

    start = time.perf_counter()
    for _ in range(steps):
        state = step(state, action, params, DEFAULT_DT)
    report = ThroughputReport(steps=steps, seconds=time.perf_counter() - start)
    logger.info("Dynamics benchmark: %s", report.summary())
    return report
