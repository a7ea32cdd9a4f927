import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..common import FloatArray
from .events import GatePass, detect_gate_pass
from .model import Track

DEFAULT_SMOOTHING = 5.0


def continuous_gate_index(i: int, d: float, k: float = DEFAULT_SMOOTHING) -> float:
    """Smooth progress measure, ``i`` at infinite distance and ``i + 1`` at the gate center"""
    # 2 / (1 + exp(kd)) written to stay finite for large kd
    return i + 2.0 * math.exp(-k * d) / (1.0 + math.exp(-k * d))


def encode_gate_index(i_c: float, n_G: int) -> FloatArray:  # noqa: N803
    alpha = 2 * math.pi / n_G
    decay = math.exp(-i_c)
    return np.array([decay + math.cos(alpha * i_c), decay + math.sin(alpha * i_c)])


@dataclass(frozen=True)
class ProgressState:
    i: int
    d_vec: FloatArray = field(compare=False)

    @property
    def d(self) -> float:
        return float(np.linalg.norm(self.d_vec))


class ProgressTracker:
    """Owns the progress of one drone along a track"""

    def __init__(self, track: Track, i: int = 0, smoothing: float = DEFAULT_SMOOTHING):
        self.track = track
        self.smoothing = smoothing
        self._i = i

    @property
    def i(self) -> int:
        return self._i

    @property
    def target_index(self) -> int:
        return self.track.target_index(self._i)

    @property
    def finished(self) -> bool:
        return self.track.is_finished(self._i)

    def state_at(self, position) -> ProgressState:
        target = self.track.gates[self.target_index]
        return ProgressState(i=self._i, d_vec=target.center - np.asarray(position, dtype=np.float64))

    def gate_index(self, position) -> float:
        return continuous_gate_index(self._i, self.state_at(position).d, self.smoothing)

    def advance(self, p_prev, p_curr) -> Optional[GatePass]:
        """Checks the segment against the current target gate, counts a pass if it happened"""
        if self.finished:
            return None
        gate_pass = detect_gate_pass(p_prev, p_curr, self.track.gates[self.target_index])
        if gate_pass is not None:
            self._i += 1
        return gate_pass
