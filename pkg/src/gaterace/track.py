from gaterace._internal.track.events import (
    DEFAULT_DRONE_RADIUS,
    GatePass,
    detect_gate_collision,
    detect_gate_pass,
    find_gate_collision,
)
from gaterace._internal.track.io import dump_track, load_track, shipped_track_names, validate_track_file
from gaterace._internal.track.model import Gate, Track
from gaterace._internal.track.progress import (
    ProgressState,
    ProgressTracker,
    continuous_gate_index,
    encode_gate_index,
)
from gaterace._internal.track.randomization import displace_gates, randomize_gates

__all__ = (
    "Gate",
    "Track",
    "GatePass",
    "ProgressState",
    "ProgressTracker",
    "continuous_gate_index",
    "encode_gate_index",
    "detect_gate_pass",
    "detect_gate_collision",
    "find_gate_collision",
    "randomize_gates",
    "displace_gates",
    "load_track",
    "dump_track",
    "shipped_track_names",
    "validate_track_file",
    "DEFAULT_DRONE_RADIUS",
)
