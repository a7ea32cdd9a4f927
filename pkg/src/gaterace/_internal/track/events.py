from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..common import FloatArray
from .kernels import swept_sphere_hits_frames
from .model import Gate, Track, TrackGeometry, stack_gates

DEFAULT_DRONE_RADIUS = 0.15
PASS_MARGIN = 0.15


@dataclass(frozen=True)
class GatePass:
    """Where the segment crossed the gate plane.

    ``crossing`` holds the in-plane coordinates (local x, local z) relative to the gate center,
    ``fraction`` is the position of the crossing along the segment.
    """

    crossing: FloatArray
    offset: float
    fraction: float

    def has_margin(self, gate: Gate, drone_radius: float = DEFAULT_DRONE_RADIUS) -> bool:
        return self.offset <= gate.inner_side / 2 - drone_radius - PASS_MARGIN


def detect_gate_pass(p_prev, p_curr, next_gate: Gate) -> Optional[GatePass]:
    a = next_gate.to_local(p_prev)
    b = next_gate.to_local(p_curr)
    if not (a[1] < 0 <= b[1]):
        return None

    fraction = -a[1] / (b[1] - a[1])
    point = a + fraction * (b - a)
    half = next_gate.inner_side / 2
    if abs(point[0]) > half or abs(point[2]) > half:
        return None

    crossing = np.array([point[0], point[2]])
    return GatePass(crossing=crossing, offset=float(np.hypot(point[0], point[2])), fraction=float(fraction))


def _as_geometry(gates: Union[Track, Sequence[Gate], TrackGeometry]) -> TrackGeometry:
    if isinstance(gates, TrackGeometry):
        return gates
    if isinstance(gates, Track):
        return gates.geometry
    return stack_gates(tuple(gates))


def find_gate_collision(
    p_prev,
    p_curr,
    drone_radius: float,
    gates: Union[Track, Sequence[Gate], TrackGeometry],
) -> Optional[int]:
    geometry = _as_geometry(gates)
    if geometry.centers.shape[0] == 0:
        return None
    hit = swept_sphere_hits_frames(
        np.asarray(p_prev, dtype=np.float64),
        np.asarray(p_curr, dtype=np.float64),
        float(drone_radius),
        geometry.centers,
        geometry.rotations,
        geometry.dimensions,
    )
    return None if hit < 0 else int(hit)


def detect_gate_collision(
    p_prev,
    p_curr,
    drone_radius: float = DEFAULT_DRONE_RADIUS,
    gates: Union[Track, Sequence[Gate], TrackGeometry] = (),
) -> bool:
    """Whether the sphere swept from ``p_prev`` to ``p_curr`` touches any gate frame"""
    return find_gate_collision(p_prev, p_curr, drone_radius, gates) is not None
