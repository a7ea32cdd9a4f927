import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Deque, List

import numpy as np

from ..quadsim.params import QuadParams
from ..quadsim.state import QuadState, quaternion_from_euler
from ..track.model import Track

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BufferEntry:
    """Reset candidate, ``i`` is the number of gates passed so far"""

    state: QuadState
    i: int


def _heading_state(position, target, speed: float, params: QuadParams) -> QuadState:
    direction = np.asarray(target, dtype=np.float64) - np.asarray(position, dtype=np.float64)
    yaw = math.atan2(direction[1], direction[0])
    velocity = speed * direction / np.linalg.norm(direction)
    return QuadState.hover(params, p_WB=position, q_WB=quaternion_from_euler(0.0, 0.0, yaw), v_W=velocity)


def seed_entries(track: Track, params: QuadParams, speed: float) -> List[BufferEntry]:
    """One entry per gate: slot ``g`` starts at the previous gate flying towards gate ``g``"""
    start_position, start_yaw = track.start_pose()
    start = QuadState.hover(
        params, p_WB=start_position, q_WB=quaternion_from_euler(0.0, 0.0, math.radians(start_yaw)),
    )
    entries = []
    for g, gate in enumerate(track.gates):
        if g > 0:
            entries.append(BufferEntry(_heading_state(track.gates[g - 1].center, gate.center, speed, params), g))
        elif track.cyclic and track.n_G > 1:
            entries.append(BufferEntry(_heading_state(track.gates[-1].center, gate.center, speed, params), 0))
        else:
            entries.append(BufferEntry(start, 0))
    return entries


class InitialStateBuffer:
    """Per-gate ring buffers of reset states, slot ``g`` holds states whose next gate is ``g``"""

    def __init__(self, track: Track, params: QuadParams, capacity: int = 10, seed_speed: float = 2.0):
        self.track = track
        self.capacity = capacity
        self._slots: List[Deque[BufferEntry]] = [
            deque([entry], maxlen=capacity) for entry in seed_entries(track, params, seed_speed)
        ]

    def __len__(self) -> int:
        return sum(len(slot) for slot in self._slots)

    def slot(self, gate_index: int) -> List[BufferEntry]:
        return list(self._slots[gate_index])

    def insert(self, entry: BufferEntry) -> None:
        gate_index = self.track.target_index(entry.i)
        self._slots[gate_index].append(entry)
        logger.debug("Buffered state for gate %d (%d stored)", gate_index, len(self._slots[gate_index]))

    def sample(self, rng: np.random.Generator) -> BufferEntry:
        slot = self._slots[int(rng.integers(len(self._slots)))]
        return slot[int(rng.integers(len(slot)))]
