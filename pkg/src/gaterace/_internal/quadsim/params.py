import math
from dataclasses import dataclass, fields
from functools import cached_property
from typing import NamedTuple

import numpy as np

from ..common import FloatArray, Matrix3, Vector3
from ..errors import InvalidParametersError
from ..utils import frozen_array

GRAVITY = 9.81


class DynamicsPack(NamedTuple):
    """Parameters flattened into the arrays consumed by the numba kernels"""

    mass: float
    inertia: FloatArray
    inertia_inv: FloatArray
    c_f: float
    k_mot: float
    allocation: FloatArray
    allocation_inv: FloatArray
    k_v_lin: FloatArray
    k_v_quad: FloatArray
    gravity: FloatArray
    omega_min: float
    omega_max: float
    rate_gains: FloatArray


@dataclass(frozen=True)
class QuadParams:
    """Physical parameters of the simulated racing quadrotor, SI units.

    Defaults describe a 0.75 kg quadrotor with a thrust-to-weight ratio of about 3.5.
    Motors are laid out in X configuration: 0 front-right, 1 rear-left, 2 front-left, 3 rear-right,
    the diagonal pairs (0, 1) and (2, 3) spin in opposite directions.
    """

    m: float = 0.75
    J: Matrix3 = ((2.5e-3, 0.0, 0.0), (0.0, 2.1e-3, 0.0), (0.0, 0.0, 4.3e-3))  # noqa: N815
    k_mot: float = 0.03
    c_f: float = 6.29e-7
    c_tau: float = 1.0e-8
    arm_length: float = 0.15
    k_v_lin: Vector3 = (0.3, 0.3, 0.5)
    k_v_quad: Vector3 = (0.01, 0.01, 0.02)
    Omega_min: float = 0.0  # noqa: N815
    Omega_max: float = 3200.0  # noqa: N815
    g: Vector3 = (0.0, 0.0, -GRAVITY)
    c_max: float = 30.0
    omega_max: float = 10.0
    rate_gains: Vector3 = (20.0, 20.0, 8.0)

    def __post_init__(self):
        problems = []
        if not self.m > 0:
            problems.append("m must be positive")
        if not self.k_mot > 0:
            problems.append("k_mot must be positive")
        if not self.c_f > 0:
            problems.append("c_f must be positive")
        if not self.arm_length > 0:
            problems.append("arm_length must be positive")
        if not self.Omega_max > self.Omega_min >= 0:
            problems.append("motor limits must satisfy Omega_max > Omega_min >= 0")
        if not self.c_max > 0 or not self.omega_max > 0:
            problems.append("action limits must be positive")

        inertia = np.array(self.J, dtype=np.float64)
        if inertia.shape != (3, 3) or not np.allclose(inertia, inertia.T, rtol=0, atol=1e-15):
            problems.append("J must be a symmetric 3x3 matrix")
        else:
            try:
                np.linalg.cholesky(inertia)
            except np.linalg.LinAlgError:
                problems.append("J must be positive definite")

        if problems:
            raise InvalidParametersError("QuadParams", "; ".join(problems))

    @property
    def yaw_moment_ratio(self) -> float:
        return self.c_tau / self.c_f

    @property
    def hover_motor_speed(self) -> float:
        return math.sqrt(self.m * -self.g[2] / (4 * self.c_f))

    @cached_property
    def pack(self) -> DynamicsPack:
        allocation = allocation_matrix(self.arm_length, self.yaw_moment_ratio)
        # rows of the allocation matrix are mutually orthogonal
        allocation_inv = allocation.T / np.sum(allocation ** 2, axis=1)
        inertia = np.array(self.J, dtype=np.float64)
        return DynamicsPack(
            mass=float(self.m),
            inertia=frozen_array(inertia),
            inertia_inv=frozen_array(np.linalg.inv(inertia)),
            c_f=float(self.c_f),
            k_mot=float(self.k_mot),
            allocation=frozen_array(allocation),
            allocation_inv=frozen_array(allocation_inv),
            k_v_lin=frozen_array(self.k_v_lin),
            k_v_quad=frozen_array(self.k_v_quad),
            gravity=frozen_array(self.g),
            omega_min=float(self.Omega_min),
            omega_max=float(self.Omega_max),
            rate_gains=frozen_array(self.rate_gains),
        )


def allocation_matrix(arm_length: float, yaw_moment_ratio: float) -> FloatArray:
    """Maps the four motor thrusts to [collective thrust, roll, pitch, yaw torque]"""
    d = arm_length / math.sqrt(2)
    kappa = yaw_moment_ratio
    return np.array(
        [
            [1.0, 1.0, 1.0, 1.0],
            [-d, d, d, -d],
            [-d, d, -d, d],
            [kappa, kappa, -kappa, -kappa],
        ],
    )


@dataclass(frozen=True)
class RandomizationSpec:
    """Half-widths of the uniform domain randomization.

    Dynamics entries are relative, initial-state entries are absolute.
    """

    thrust_frac: float = 0.20
    drag_frac: float = 0.20
    inertia_frac: float = 0.20
    mass_frac: float = 0.05
    pos_xy: float = 0.8
    pos_z: float = 0.6
    att_deg: float = 20.0
    vel: float = 0.8
    rate_dps: float = 45.0
    gate_cm: float = 0.05

    def __post_init__(self):
        negative = [fld.name for fld in fields(self) if not getattr(self, fld.name) >= 0]
        if negative:
            raise InvalidParametersError("RandomizationSpec", f"half-widths must be >= 0: {', '.join(negative)}")

    @classmethod
    def disabled(cls) -> "RandomizationSpec":
        return cls(**{fld.name: 0.0 for fld in fields(cls)})
