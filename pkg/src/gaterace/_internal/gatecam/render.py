from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..common import FloatArray
from ..track.model import Gate
from .camera import CameraExtrinsics, CameraIntrinsics, RigidTransform, project_points
from .kernels import rasterize_layers

DEFAULT_CORRUPTION_FRAC = 0.10
DEFAULT_POINTS_PER_EDGE = 5
DEFAULT_LINE_WIDTH = 1.5


@dataclass(frozen=True, eq=False)
class GateMask:
    pixels: FloatArray
    n_segments: int = 0
    n_corrupted: int = 0

    def __eq__(self, other):
        if isinstance(other, GateMask):
            return bool(np.array_equal(self.pixels, other.pixels))
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def empty(cls, size: int) -> "GateMask":
        return cls(np.zeros((size, size)))

    def to_uint8(self) -> np.ndarray:
        return np.round(255 * np.clip(self.pixels, 0.0, 1.0)).astype(np.uint8)


def camera_pose(T_WB: RigidTransform, extr: CameraExtrinsics) -> RigidTransform:  # noqa: N803
    return T_WB.compose(extr.T_BC)


def _edge_points(gate: Gate, points_per_edge: int) -> FloatArray:
    """World points of the four inner edges, shape ``(4, points_per_edge, 3)``"""
    corners = gate.inner_corners()
    t = np.linspace(0.0, 1.0, points_per_edge)[:, None]
    return np.stack(
        [corners[k] + t * (corners[(k + 1) % 4] - corners[k]) for k in range(4)],
    )


def project_gate_edges(
    gate: Gate,
    T_WB: RigidTransform,  # noqa: N803
    extr: CameraExtrinsics,
    intr: CameraIntrinsics,
    points_per_edge: int = DEFAULT_POINTS_PER_EDGE,
) -> FloatArray:
    """Mask-pixel polylines of the inner edges, shape ``(4, points_per_edge, 2)``, NaN where not projectable"""
    return _project_edges(gate, camera_pose(T_WB, extr), intr, points_per_edge)


def _project_edges(gate: Gate, pose: RigidTransform, intr: CameraIntrinsics, points_per_edge: int) -> FloatArray:
    points_W = _edge_points(gate, points_per_edge).reshape(-1, 3)
    points_C = pose.inverse_apply(points_W)
    pixels, _ = project_points(points_C, intr)
    pixels = pixels * np.array(intr.mask_scale)
    return pixels.reshape(4, points_per_edge, 2)


def _edge_segments(polylines: FloatArray) -> FloatArray:
    starts = polylines[:, :-1].reshape(-1, 2)
    ends = polylines[:, 1:].reshape(-1, 2)
    segments = np.concatenate([starts, ends], axis=1)
    return segments[np.isfinite(segments).all(axis=1)]


def _corrupt(segments: FloatArray, frac: float, size: int, rng: np.random.Generator) -> int:
    """Relocates a random subset of segments in place keeping their length"""
    hit = rng.random(segments.shape[0]) < frac
    count = int(hit.sum())
    if count == 0:
        return 0
    chosen = segments[hit]
    lengths = np.hypot(chosen[:, 2] - chosen[:, 0], chosen[:, 3] - chosen[:, 1])
    draws = rng.random((count, 3))
    angles = draws[:, 0] * np.pi
    mid_x = draws[:, 1] * size
    mid_y = draws[:, 2] * size
    half_dx = 0.5 * lengths * np.cos(angles)
    half_dy = 0.5 * lengths * np.sin(angles)
    segments[hit] = np.stack([mid_x - half_dx, mid_y - half_dy, mid_x + half_dx, mid_y + half_dy], axis=1)
    return count


def render_gate_mask(
    gates: Sequence[Gate],
    T_WB: RigidTransform,  # noqa: N803
    extr: CameraExtrinsics,
    intr: CameraIntrinsics,
    corruption_frac: float = DEFAULT_CORRUPTION_FRAC,
    rng: Optional[np.random.Generator] = None,
    *,
    points_per_edge: int = DEFAULT_POINTS_PER_EDGE,
    line_width: float = DEFAULT_LINE_WIDTH,
) -> GateMask:
    """Draws the inner gate edges seen from the drone pose.

    Gates are painted far to near, pixels of a nearer gate replace earlier ones.
    A ``corruption_frac`` share of the edge sub-segments is moved to a random place of the image.
    """
    size = intr.mask_size
    if not gates:
        return GateMask.empty(size)
    if corruption_frac > 0 and rng is None:
        raise ValueError("rng is required when corruption_frac > 0")

    pose = camera_pose(T_WB, extr)
    distances = np.array([np.linalg.norm(gate.center - pose.translation) for gate in gates])
    order = np.argsort(-distances, kind="stable")

    groups = []
    for idx in order:
        polylines = _project_edges(gates[idx], pose, intr, points_per_edge)
        groups.append(_edge_segments(polylines))

    starts = np.zeros(len(groups) + 1, dtype=np.int64)
    starts[1:] = np.cumsum([len(group) for group in groups])
    segments = np.concatenate(groups) if starts[-1] else np.zeros((0, 4))

    n_corrupted = 0
    if corruption_frac > 0 and segments.shape[0]:
        n_corrupted = _corrupt(segments, corruption_frac, size, rng)  # type: ignore[arg-type]

    out = np.zeros((size, size))
    if segments.shape[0]:
        rasterize_layers(np.ascontiguousarray(segments), starts, float(line_width), np.empty((size, size)), out)
    return GateMask(out, n_segments=int(segments.shape[0]), n_corrupted=n_corrupted)


def body_pose(p_WB, R_WB) -> RigidTransform:  # noqa: N803
    return RigidTransform(np.asarray(R_WB, dtype=np.float64), np.asarray(p_WB, dtype=np.float64))
