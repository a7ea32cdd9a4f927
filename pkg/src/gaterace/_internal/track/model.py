import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Tuple

import numpy as np

from ..common import FloatArray, VarTuple, Vector3
from ..errors import GateProblem, TrackValidationError
from ..utils import frozen_array, pairs

DEFAULT_INNER_SIDE = 1.5
DEFAULT_FRAME_WIDTH = 0.2
DEFAULT_FRAME_DEPTH = 0.05
DEFAULT_START_DISTANCE = 2.0
MIN_GATE_SPACING = 0.5


def rotation_from_euler_deg(yaw: float, pitch: float = 0.0, roll: float = 0.0) -> FloatArray:
    """ZYX rotation, angles in degrees"""
    cy, sy = math.cos(math.radians(yaw)), math.sin(math.radians(yaw))
    cp, sp = math.cos(math.radians(pitch)), math.sin(math.radians(pitch))
    cr, sr = math.cos(math.radians(roll)), math.sin(math.radians(roll))
    return np.array(
        [
            [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
            [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
            [-sp, cp * sr, cp * cr],
        ],
    )


@dataclass(frozen=True)
class Gate:
    """Square race gate.

    The opening lies in the local x-z plane and local y is the passing direction,
    so with zero yaw the gate is passed flying towards world +y.
    Angles are in degrees, the forward normal is ``R_WG[:, 1]``.
    """

    position: Vector3
    yaw: float = 0.0
    pitch: float = 0.0
    roll: float = 0.0
    inner_side: float = DEFAULT_INNER_SIDE
    frame_width: float = DEFAULT_FRAME_WIDTH
    frame_depth: float = DEFAULT_FRAME_DEPTH

    @cached_property
    def R_WG(self) -> FloatArray:  # noqa: N802
        return frozen_array(rotation_from_euler_deg(self.yaw, self.pitch, self.roll))

    @cached_property
    def center(self) -> FloatArray:
        return frozen_array(self.position)

    @property
    def normal(self) -> FloatArray:
        return self.R_WG[:, 1]

    def to_local(self, point_W) -> FloatArray:
        return self.R_WG.T @ (np.asarray(point_W, dtype=np.float64) - self.center)

    def to_world(self, point_G) -> FloatArray:
        return self.R_WG @ np.asarray(point_G, dtype=np.float64) + self.center

    def inner_corners(self) -> FloatArray:
        """Corners of the opening in world frame, ordered around the square"""
        s = self.inner_side / 2
        local = np.array([[-s, 0.0, -s], [s, 0.0, -s], [s, 0.0, s], [-s, 0.0, s]])
        return local @ self.R_WG.T + self.center


class TrackGeometry(NamedTuple):
    """Gate data stacked into arrays for the collision kernel"""

    centers: FloatArray
    rotations: FloatArray
    dimensions: FloatArray


def stack_gates(gates: VarTuple[Gate]) -> TrackGeometry:
    return TrackGeometry(
        centers=np.array([gate.position for gate in gates], dtype=np.float64).reshape(-1, 3),
        rotations=np.array([gate.R_WG for gate in gates], dtype=np.float64).reshape(-1, 3, 3),
        dimensions=np.array(
            [(gate.inner_side / 2, gate.frame_width, gate.frame_depth / 2) for gate in gates],
            dtype=np.float64,
        ).reshape(-1, 3),
    )


@dataclass(frozen=True)
class Track:
    gates: VarTuple[Gate]
    cyclic: bool = True
    name: str = ""
    start_position: Optional[Vector3] = None
    start_yaw: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        problems = list(find_track_problems(self))
        if problems:
            raise TrackValidationError(f"Track {self.name!r} is invalid", problems)

    @property
    def n_G(self) -> int:  # noqa: N802
        return len(self.gates)

    def target_index(self, passed: int) -> int:
        """Index of the next gate to pass after ``passed`` passes"""
        if self.cyclic:
            return passed % self.n_G
        return min(passed, self.n_G - 1)

    def is_finished(self, passed: int) -> bool:
        return not self.cyclic and passed >= self.n_G

    @cached_property
    def geometry(self) -> TrackGeometry:
        return stack_gates(self.gates)

    def start_pose(self) -> Tuple[FloatArray, float]:
        """Start position and yaw in degrees; defaults to a point behind gate 0 facing it"""
        first = self.gates[0]
        if self.start_position is not None:
            position = np.array(self.start_position, dtype=np.float64)
        else:
            position = first.center - DEFAULT_START_DISTANCE * first.normal
        if self.start_yaw is not None:
            yaw = self.start_yaw
        else:
            direction = first.center - position
            yaw = math.degrees(math.atan2(direction[1], direction[0]))
        return position, yaw


def find_track_problems(track: Track):
    if not track.gates:
        yield GateProblem(None, "track must contain at least one gate")
        return

    malformed = False
    for idx, gate in enumerate(track.gates):
        if len(gate.position) != 3 or not all(math.isfinite(c) for c in gate.position):
            yield GateProblem(idx, "position must be three finite numbers")
            malformed = True
            continue
        if not gate.inner_side > 0:
            yield GateProblem(idx, f"inner_side must be positive, got {gate.inner_side}")
        if not gate.frame_width > 0:
            yield GateProblem(idx, f"frame_width must be positive, got {gate.frame_width}")
        if not gate.frame_depth > 0:
            yield GateProblem(idx, f"frame_depth must be positive, got {gate.frame_depth}")
        if not gate.position[2] > 0:
            yield GateProblem(idx, "gate center must be above the ground")

    if malformed:
        return

    indexed = list(enumerate(track.gates))
    if track.cyclic and len(indexed) > 1:
        indexed.append(indexed[0])
    for (prev_idx, prev), (idx, gate) in pairs(indexed):
        distance = math.dist(prev.position, gate.position)
        if distance < MIN_GATE_SPACING:
            yield GateProblem(idx, f"gate is {distance:.3f} m from gate {prev_idx}")
