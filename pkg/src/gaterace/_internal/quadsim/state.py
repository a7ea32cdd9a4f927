from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..common import FloatArray, Vector3
from ..errors import ContractViolationError
from ..utils import frozen_array
from .params import QuadParams

STATE_SIZE = 17

P_SLICE = slice(0, 3)
Q_SLICE = slice(3, 7)
V_SLICE = slice(7, 10)
OMEGA_SLICE = slice(10, 13)
MOTOR_SLICE = slice(13, 17)

IDENTITY_QUATERNION = (1.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True, eq=False)
class QuadState:
    """Simulation truth packed as ``[p_WB, q_WB (w, x, y, z), v_W, omega_B, Omega]``"""

    vector: FloatArray

    def __post_init__(self):
        if self.vector.shape != (STATE_SIZE,):
            raise ContractViolationError(f"state vector must have shape ({STATE_SIZE},), got {self.vector.shape}")
        if self.vector.flags.writeable:
            object.__setattr__(self, "vector", frozen_array(self.vector))

    @classmethod
    def from_components(
        cls,
        p_WB: Sequence[float],  # noqa: N803
        q_WB: Sequence[float] = IDENTITY_QUATERNION,  # noqa: N803
        v_W: Sequence[float] = (0.0, 0.0, 0.0),  # noqa: N803
        omega_B: Sequence[float] = (0.0, 0.0, 0.0),  # noqa: N803
        Omega: Sequence[float] = (0.0, 0.0, 0.0, 0.0),  # noqa: N803
    ) -> "QuadState":
        q = np.asarray(q_WB, dtype=np.float64)
        return cls(np.concatenate([p_WB, q / np.linalg.norm(q), v_W, omega_B, Omega]).astype(np.float64))

    @classmethod
    def hover(
        cls,
        params: QuadParams,
        p_WB: Sequence[float] = (0.0, 0.0, 1.0),  # noqa: N803
        q_WB: Sequence[float] = IDENTITY_QUATERNION,  # noqa: N803
        v_W: Sequence[float] = (0.0, 0.0, 0.0),  # noqa: N803
    ) -> "QuadState":
        return cls.from_components(p_WB, q_WB, v_W, Omega=[params.hover_motor_speed] * 4)

    @property
    def p_WB(self) -> FloatArray:  # noqa: N802
        return self.vector[P_SLICE]

    @property
    def q_WB(self) -> FloatArray:  # noqa: N802
        return self.vector[Q_SLICE]

    @property
    def v_W(self) -> FloatArray:  # noqa: N802
        return self.vector[V_SLICE]

    @property
    def omega_B(self) -> FloatArray:  # noqa: N802
        return self.vector[OMEGA_SLICE]

    @property
    def Omega(self) -> FloatArray:  # noqa: N802
        return self.vector[MOTOR_SLICE]

    @property
    def R_WB(self) -> FloatArray:  # noqa: N802
        return quaternion_to_rotation(self.q_WB)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.vector)))

    def __eq__(self, other):
        if isinstance(other, QuadState):
            return bool(np.array_equal(self.vector, other.vector))
        return NotImplemented

    def __hash__(self):
        return hash(self.vector.tobytes())

    def __repr__(self):
        return f"{type(self).__name__}(p_WB={self.p_WB.tolist()}, q_WB={self.q_WB.tolist()}, v_W={self.v_W.tolist()})"


@dataclass(frozen=True, eq=False)
class QuadStateDerivative:
    vector: FloatArray

    @property
    def p_dot(self) -> FloatArray:
        return self.vector[P_SLICE]

    @property
    def q_dot(self) -> FloatArray:
        return self.vector[Q_SLICE]

    @property
    def v_dot(self) -> FloatArray:
        return self.vector[V_SLICE]

    @property
    def omega_dot(self) -> FloatArray:
        return self.vector[OMEGA_SLICE]

    @property
    def Omega_dot(self) -> FloatArray:  # noqa: N802
        return self.vector[MOTOR_SLICE]


@dataclass(frozen=True)
class Action:
    """CTBR command: mass-normalized collective thrust [m/s^2] and body-rate setpoint [rad/s]"""

    c: float
    omega_ref: Vector3 = (0.0, 0.0, 0.0)

    @classmethod
    def hover(cls, params: Optional[QuadParams] = None) -> "Action":
        gravity = params.g[2] if params is not None else QuadParams().g[2]
        return cls(c=-gravity)


def denormalize_action(normalized: Sequence[float], params: QuadParams) -> Action:
    """Policy outputs live in [-1, 1]^4; thrust maps affinely to [0, c_max], rates scale by omega_max"""
    a = np.clip(np.asarray(normalized, dtype=np.float64), -1.0, 1.0)
    return Action(
        c=float((a[0] + 1.0) * 0.5 * params.c_max),
        omega_ref=(
            float(a[1] * params.omega_max),
            float(a[2] * params.omega_max),
            float(a[3] * params.omega_max),
        ),
    )


def normalize_action(action: Action, params: QuadParams) -> FloatArray:
    return np.array(
        [
            2.0 * action.c / params.c_max - 1.0,
            *(w / params.omega_max for w in action.omega_ref),
        ],
    )


def quaternion_to_rotation(q: Sequence[float]) -> FloatArray:
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ],
    )


def quaternion_from_euler(roll: float, pitch: float, yaw: float) -> FloatArray:
    """ZYX convention, radians"""
    cr, sr = np.cos(roll / 2), np.sin(roll / 2)
    cp, sp = np.cos(pitch / 2), np.sin(pitch / 2)
    cy, sy = np.cos(yaw / 2), np.sin(yaw / 2)
    return np.array(
        [
            cr * cp * cy + sr * sp * sy,
            sr * cp * cy - cr * sp * sy,
            cr * sp * cy + sr * cp * sy,
            cr * cp * sy - sr * sp * cy,
        ],
    )


def quaternion_multiply(a: Sequence[float], b: Sequence[float]) -> FloatArray:
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return np.array(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
    )
