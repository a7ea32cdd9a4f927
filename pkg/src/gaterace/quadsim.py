from gaterace._internal.quadsim.bench import ThroughputReport, dynamics_benchmark
from gaterace._internal.quadsim.dynamics import DEFAULT_DT, derivative, integrate, rate_controller, step
from gaterace._internal.quadsim.params import GRAVITY, QuadParams, RandomizationSpec, allocation_matrix
from gaterace._internal.quadsim.randomization import randomize
from gaterace._internal.quadsim.state import (
    STATE_SIZE,
    Action,
    QuadState,
    QuadStateDerivative,
    denormalize_action,
    normalize_action,
    quaternion_from_euler,
    quaternion_multiply,
    quaternion_to_rotation,
)

__all__ = (
    "QuadState",
    "QuadStateDerivative",
    "QuadParams",
    "Action",
    "RandomizationSpec",
    "derivative",
    "rate_controller",
    "step",
    "integrate",
    "randomize",
    "denormalize_action",
    "normalize_action",
    "allocation_matrix",
    "quaternion_to_rotation",
    "quaternion_from_euler",
    "quaternion_multiply",
    "DEFAULT_DT",
    "GRAVITY",
    "STATE_SIZE",
    "ThroughputReport",
    "dynamics_benchmark",
)
