import math
from typing import List

import numpy as np

from ..common import FloatArray
from ..track.events import DEFAULT_DRONE_RADIUS, GatePass, find_gate_collision
from ..track.model import Track
from ..track.progress import ProgressTracker
from .metrics import RolloutRecord, lap_times


class RolloutScorer:
    """Collects gate passes of one rollout until the target number of passes is reached"""

    def __init__(self, track: Track, laps: int):
        self.track = track
        self.laps = laps if track.cyclic else 1
        self.target_passes = track.n_G * self.laps
        self.offsets: List[float] = []
        self.times: List[float] = []
        self.crossings: List[FloatArray] = []

    @property
    def complete(self) -> bool:
        return len(self.times) >= self.target_passes

    def record_pass(self, t: float, gate_pass: GatePass) -> None:
        self.offsets.append(gate_pass.offset)
        self.times.append(t)
        self.crossings.append(gate_pass.crossing)

    def finish(self, index: int, outcome: str, duration: float) -> RolloutRecord:
        return RolloutRecord(
            index=index,
            outcome=outcome,
            gates_passed=len(self.times),
            pass_offsets=tuple(self.offsets),
            pass_times=tuple(self.times),
            crossings=np.array(self.crossings).reshape(-1, 2),
            lap_times=lap_times(self.times, self.track.n_G, self.laps),
            duration=duration,
        )


def trace_trajectory(
    positions,
    track: Track,
    dt: float = 0.02,
    laps: int = 3,
    drone_radius: float = DEFAULT_DRONE_RADIUS,
    index: int = 0,
) -> RolloutRecord:
    """Scores a kinematic position trace with the pass, crash and lap rules of rollouts.

    Row ``k`` of ``positions`` is the position at time ``k * dt``.
    """
    positions = np.asarray(positions, dtype=np.float64)
    tracker = ProgressTracker(track)
    scorer = RolloutScorer(track, laps)
    outcome = "timeout"
    t = 0.0
    for k in range(1, len(positions)):
        p_prev, p_curr = positions[k - 1], positions[k]
        t = k * dt
        gate_pass = tracker.advance(p_prev, p_curr)
        if gate_pass is not None:
            scorer.record_pass(t - dt + gate_pass.fraction * dt, gate_pass)
        if p_curr[2] < 0:
            outcome = "crash_ground"
            break
        if find_gate_collision(p_prev, p_curr, drone_radius, track) is not None:
            outcome = "crash_gate"
            break
        if scorer.complete:
            outcome = "success"
            break
    return scorer.finish(index, outcome, t)


def center_line_trajectory(track: Track, laps: int = 3, speed: float = 4.0, dt: float = 0.02) -> FloatArray:
    """Straight segments from the start pose through every gate center, at roughly constant speed.

    Each gate center is hit exactly by one sample, the trace ends one step past the last gate.
    """
    start, _ = track.start_pose()
    waypoints = [start]
    for _ in range(laps if track.cyclic else 1):
        waypoints.extend(gate.center for gate in track.gates)

    points = [waypoints[0]]
    for a, b in zip(waypoints, waypoints[1:]):
        n = max(1, math.ceil(np.linalg.norm(b - a) / (speed * dt)))
        points.extend(a + (k / n) * (b - a) for k in range(1, n))
        points.append(np.array(b, dtype=np.float64))
    last = track.gates[-1]
    points.append(last.center + speed * dt * last.normal)
    return np.array(points)
