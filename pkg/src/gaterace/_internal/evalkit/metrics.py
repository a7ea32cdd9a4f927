from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..common import FloatArray, VarTuple

OUTCOMES = ("success", "crash_ground", "crash_gate", "timeout")


@dataclass(frozen=True)
class RolloutRecord:
    """Outcome of one evaluation rollout.

    ``pass_times`` are interpolated to the moment the gate plane was crossed.
    """

    index: int
    outcome: str
    gates_passed: int
    pass_offsets: VarTuple[float]
    pass_times: VarTuple[float]
    crossings: FloatArray = field(compare=False, repr=False)
    lap_times: VarTuple[float]
    duration: float

    @property
    def success(self) -> bool:
        return self.outcome == "success"


def lap_times(pass_times: Sequence[float], n_gates: int, laps: Optional[int] = None) -> VarTuple[float]:
    """Lap ``k`` lasts from pass ``(k - 1) * n_gates`` to pass ``k * n_gates``, the first one from time 0"""
    completed = len(pass_times) // n_gates
    if laps is not None:
        completed = min(completed, laps)
    boundaries = [0.0] + [pass_times[k * n_gates - 1] for k in range(1, completed + 1)]
    return tuple(float(b - a) for a, b in zip(boundaries, boundaries[1:]))


def mean_gate_error(offsets: Sequence[float]) -> Optional[float]:
    if len(offsets) == 0:
        return None
    return float(np.mean(offsets))


@dataclass(frozen=True)
class EvalReport:
    """Success rate in percent, mean gate-passing error in meters, mean lap time in seconds.

    ``lt`` and ``best_lap`` are absent when no rollout succeeded, ``mge`` when no gate was passed.
    """

    sr: float
    mge: Optional[float]
    lt: Optional[float]
    best_lap: Optional[float]
    breakdown: Dict[str, float]
    rollouts: VarTuple[RolloutRecord] = field(repr=False)
    episode_log: Any = field(default=None, compare=False, repr=False)

    @property
    def n_rollouts(self) -> int:
        return len(self.rollouts)


def build_report(records: Sequence[RolloutRecord], episode_log=None) -> EvalReport:
    n = len(records)
    counts = {outcome: 0 for outcome in OUTCOMES}
    for record in records:
        counts[record.outcome] += 1
    breakdown = {outcome: 100.0 * count / n if n else 0.0 for outcome, count in counts.items()}

    offsets = [offset for record in records for offset in record.pass_offsets]
    laps = [lap for record in records if record.success for lap in record.lap_times]
    return EvalReport(
        sr=breakdown["success"],
        mge=mean_gate_error(offsets),
        lt=float(np.mean(laps)) if laps else None,
        best_lap=float(np.min(laps)) if laps else None,
        breakdown=breakdown,
        rollouts=tuple(records),
        episode_log=episode_log,
    )
