from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..common import FloatArray
from ..gatecam.render import GateMask
from ..quadsim.state import QuadState
from ..track.progress import continuous_gate_index, encode_gate_index

FULL_STATE_SIZE = 20
ACTION_SIZE = 4


@dataclass(frozen=True, eq=False)
class FullSimState:
    """Privileged critic input ``[p, R_tilde, v, omega, i, d]``"""

    vector: FloatArray

    @property
    def p(self) -> FloatArray:
        return self.vector[0:3]

    @property
    def R_tilde(self) -> FloatArray:  # noqa: N802
        return self.vector[3:9]

    @property
    def v(self) -> FloatArray:
        return self.vector[9:12]

    @property
    def omega(self) -> FloatArray:
        return self.vector[12:15]

    @property
    def i(self) -> FloatArray:
        return self.vector[15:17]

    @property
    def d(self) -> FloatArray:
        return self.vector[17:20]


def build_full_state(state: QuadState, passed: int, d_vec, n_G: int, smoothing: float) -> FullSimState:  # noqa: N803
    d_vec = np.asarray(d_vec, dtype=np.float64)
    rotation = state.R_WB
    i_c = continuous_gate_index(passed, float(np.linalg.norm(d_vec)), smoothing)
    return FullSimState(
        np.concatenate(
            [
                state.p_WB,
                rotation[:, 0],
                rotation[:, 1],
                state.v_W,
                state.omega_B,
                encode_gate_index(i_c, n_G),
                d_vec,
            ],
        ),
    )


@dataclass(frozen=True, eq=False)
class ActorObservation:
    """Mask is absent in state mode, history holds normalized actions oldest first"""

    mask: Optional[GateMask]
    action_history: FloatArray

    @property
    def history_vector(self) -> FloatArray:
        return self.action_history.reshape(-1)


class ActionHistory:
    def __init__(self, length: int):
        self._buffer = np.zeros((length, ACTION_SIZE))

    def clear(self) -> None:
        self._buffer[:] = 0.0

    def push(self, action: Sequence[float]) -> None:
        self._buffer[:-1] = self._buffer[1:]
        self._buffer[-1] = action

    @property
    def latest(self) -> FloatArray:
        return self._buffer[-1].copy()

    def snapshot(self) -> FloatArray:
        return self._buffer.copy()
