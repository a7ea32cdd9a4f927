import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import RewardConfig

COMPONENTS = ("progress", "perception", "gate_pass", "command", "crash")


@dataclass(frozen=True)
class RewardBreakdown:
    """Reward terms, ``command`` and ``crash`` enter the total negatively"""

    progress: float = 0.0
    perception: float = 0.0
    gate_pass: float = 0.0
    command: float = 0.0
    crash: float = 0.0

    @property
    def total(self) -> float:
        return self.progress + self.perception + self.gate_pass - self.command - self.crash

    def as_tuple(self):
        return tuple(getattr(self, name) for name in COMPONENTS)


def reward(
    prev_d: float,
    curr_d: float,
    delta_cam: float,
    action: Sequence[float],
    prev_action: Sequence[float],
    pass_offset: Optional[float],
    crash: bool,
    cfg: RewardConfig,
    terminal: bool = False,
) -> RewardBreakdown:
    """Distances to the gate targeted before the step, normalized actions, ``delta_cam`` in radians.

    ``terminal`` marks the final pass of a point-to-point track, its bonus is added to ``gate_pass``.
    """
    a_t = np.asarray(action, dtype=np.float64)
    a_prev = np.asarray(prev_action, dtype=np.float64)
    gate_pass = 0.0
    if pass_offset is not None:
        gate_pass = cfg.pass_base - pass_offset
    if terminal:
        gate_pass += cfg.terminal_reward_acyclic
    return RewardBreakdown(
        progress=cfg.lambda1 * (prev_d - curr_d),
        perception=cfg.lambda2 * math.exp(-delta_cam ** 4),
        gate_pass=gate_pass,
        command=cfg.lambda3 * float(np.linalg.norm(a_t)) + cfg.lambda4 * float(np.sum((a_t - a_prev) ** 2)),
        crash=cfg.crash_penalty if crash else 0.0,
    )


def camera_gate_angle(optical_axis_W, d_vec) -> float:
    """Angle between the optical axis and the direction to the next gate center, radians"""
    axis = np.asarray(optical_axis_W, dtype=np.float64)
    direction = np.asarray(d_vec, dtype=np.float64)
    norm = np.linalg.norm(direction) * np.linalg.norm(axis)
    if norm < 1e-12:
        return 0.0
    return math.acos(max(-1.0, min(1.0, float(axis @ direction) / norm)))
