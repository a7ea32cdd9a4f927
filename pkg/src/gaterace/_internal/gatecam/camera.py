import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from ..common import FloatArray, Vector3
from ..errors import InvalidParametersError, InvalidPixelError
from ..utils import frozen_array

MASK_SIZE = 84
DEFAULT_UPTILT_DEG = 30.0


@dataclass(frozen=True)
class CameraIntrinsics:
    """Double-sphere fisheye model, focal lengths and principal point in native pixels"""

    fx: float = 285.0
    fy: float = 285.0
    cx: float = 420.0
    cy: float = 234.0
    xi: float = -0.27
    alpha_cam: float = 0.57
    width: int = 840
    height: int = 468
    mask_size: int = MASK_SIZE

    def __post_init__(self):
        problems = []
        if not (self.fx > 0 and self.fy > 0):
            problems.append("focal lengths must be positive")
        if not 0 <= self.alpha_cam <= 1:
            problems.append("alpha_cam must lie in [0, 1]")
        if not (self.width > 0 and self.height > 0):
            problems.append("image size must be positive")
        if self.mask_size != MASK_SIZE:
            problems.append(f"mask_size is fixed to {MASK_SIZE}")
        if problems:
            raise InvalidParametersError("CameraIntrinsics", "; ".join(problems))

    @property
    def mask_scale(self) -> Tuple[float, float]:
        return self.mask_size / self.width, self.mask_size / self.height

    @property
    def projection_bound(self) -> float:
        """Points must satisfy ``z > -bound * |p|`` to be projectable"""
        alpha, xi = self.alpha_cam, self.xi
        w1 = alpha / (1 - alpha) if alpha <= 0.5 else (1 - alpha) / alpha
        return (w1 + xi) / math.sqrt(2 * w1 * xi + xi * xi + 1)


@dataclass(frozen=True, eq=False)
class RigidTransform:
    """Maps points of the child frame into the parent frame: ``p_parent = R @ p_child + t``"""

    rotation: FloatArray
    translation: FloatArray = field(default_factory=lambda: frozen_array((0.0, 0.0, 0.0)))

    def __post_init__(self):
        object.__setattr__(self, "rotation", frozen_array(self.rotation))
        object.__setattr__(self, "translation", frozen_array(self.translation))
        if self.rotation.shape != (3, 3) or self.translation.shape != (3,):
            raise InvalidParametersError("RigidTransform", "rotation must be 3x3 and translation a 3-vector")
        if not np.allclose(self.rotation.T @ self.rotation, np.eye(3), rtol=0, atol=1e-9):
            raise InvalidParametersError("RigidTransform", "rotation must be orthonormal")

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls(np.eye(3))

    def compose(self, child: "RigidTransform") -> "RigidTransform":
        return RigidTransform(self.rotation @ child.rotation, self.rotation @ child.translation + self.translation)

    def inverse_apply(self, points_parent) -> FloatArray:
        """Expresses parent-frame points (rows) in the child frame"""
        return (np.asarray(points_parent, dtype=np.float64) - self.translation) @ self.rotation


def uptilt_rotation(uptilt_deg: float) -> FloatArray:
    """Camera z along the optical axis, x right and y down, optical axis pitched up from body x"""
    theta = math.radians(uptilt_deg)
    s, c = math.sin(theta), math.cos(theta)
    return np.array(
        [
            [0.0, s, c],
            [-1.0, 0.0, 0.0],
            [0.0, -c, s],
        ],
    )


@dataclass(frozen=True)
class CameraExtrinsics:
    T_BC: RigidTransform  # noqa: N815

    @classmethod
    def from_uptilt(cls, uptilt_deg: float = DEFAULT_UPTILT_DEG, translation: Sequence[float] = (0.0, 0.0, 0.0)):
        return cls(RigidTransform(uptilt_rotation(uptilt_deg), np.asarray(translation, dtype=np.float64)))

    @property
    def optical_axis_B(self) -> FloatArray:  # noqa: N802
        return self.T_BC.rotation[:, 2]


@dataclass(frozen=True)
class CameraMount:
    """Config-file form of the extrinsics"""

    uptilt_deg: float = DEFAULT_UPTILT_DEG
    translation: Vector3 = (0.0, 0.0, 0.0)

    def extrinsics(self) -> CameraExtrinsics:
        return CameraExtrinsics.from_uptilt(self.uptilt_deg, self.translation)


@dataclass(frozen=True)
class CameraConfig:
    intrinsics: CameraIntrinsics = CameraIntrinsics()
    mount: CameraMount = CameraMount()


def project_points(points_C, intr: CameraIntrinsics) -> Tuple[FloatArray, np.ndarray]:
    """Vectorized projection of camera-frame points given as rows.

    Returns native pixel coordinates and the validity flags, invalid rows hold NaN.
    """
    points = np.asarray(points_C, dtype=np.float64).reshape(-1, 3)
    x, y, z = points[:, 0], points[:, 1], points[:, 2]
    d1 = np.sqrt(x * x + y * y + z * z)
    shifted = intr.xi * d1 + z
    d2 = np.sqrt(x * x + y * y + shifted * shifted)
    denom = intr.alpha_cam * d2 + (1 - intr.alpha_cam) * shifted
    valid = (z > -intr.projection_bound * d1) & (denom > 0)

    pixels = np.full((points.shape[0], 2), np.nan)
    safe = np.where(valid, denom, 1.0)
    pixels[:, 0] = np.where(valid, intr.fx * x / safe + intr.cx, np.nan)
    pixels[:, 1] = np.where(valid, intr.fy * y / safe + intr.cy, np.nan)
    return pixels, valid


def project(point_C: Sequence[float], intr: CameraIntrinsics) -> Optional[FloatArray]:
    """Returns the native pixel of a camera-frame point or None when it is not projectable"""
    pixels, valid = project_points(point_C, intr)
    if not valid[0]:
        return None
    return pixels[0]


def unproject(pixel: Sequence[float], intr: CameraIntrinsics) -> FloatArray:
    u, v = pixel
    alpha, xi = intr.alpha_cam, intr.xi
    mx = (u - intr.cx) / intr.fx
    my = (v - intr.cy) / intr.fy
    r2 = mx * mx + my * my
    if alpha > 0.5 and r2 > 1 / (2 * alpha - 1):
        raise InvalidPixelError(u, v)

    mz = (1 - alpha * alpha * r2) / (alpha * math.sqrt(1 - (2 * alpha - 1) * r2) + 1 - alpha)
    scale = (mz * xi + math.sqrt(mz * mz + (1 - xi * xi) * r2)) / (mz * mz + r2)
    ray = np.array([scale * mx, scale * my, scale * mz - xi])
    ray /= np.linalg.norm(ray)
    if not project_points(ray, intr)[1][0]:
        raise InvalidPixelError(u, v)
    return ray


def off_axis_angle(ray: Sequence[float]) -> float:
    """Angle between a ray and the optical axis, radians"""
    x, y, z = ray
    return math.atan2(math.hypot(x, y), z)


def horizontal_fov(intr: CameraIntrinsics) -> float:
    """Field of view spanned by the image width through the principal row, degrees"""
    left = unproject((0.0, intr.cy), intr)
    right = unproject((float(intr.width), intr.cy), intr)
    return math.degrees(off_axis_angle(left) + off_axis_angle(right))
