from gaterace._internal.gatecam.bench import BenchmarkReport, MaskScene, benchmark_scene, mask_render_benchmark
from gaterace._internal.gatecam.camera import (
    MASK_SIZE,
    CameraConfig,
    CameraExtrinsics,
    CameraIntrinsics,
    CameraMount,
    RigidTransform,
    horizontal_fov,
    off_axis_angle,
    project,
    project_points,
    unproject,
    uptilt_rotation,
)
from gaterace._internal.gatecam.pgm import decode_pgm, encode_pgm, read_pgm, write_pgm
from gaterace._internal.gatecam.render import (
    DEFAULT_CORRUPTION_FRAC,
    GateMask,
    body_pose,
    camera_pose,
    project_gate_edges,
    render_gate_mask,
)

__all__ = (
    "CameraIntrinsics",
    "CameraExtrinsics",
    "CameraMount",
    "CameraConfig",
    "RigidTransform",
    "GateMask",
    "MaskScene",
    "BenchmarkReport",
    "project",
    "project_points",
    "unproject",
    "off_axis_angle",
    "horizontal_fov",
    "uptilt_rotation",
    "render_gate_mask",
    "project_gate_edges",
    "camera_pose",
    "body_pose",
    "mask_render_benchmark",
    "benchmark_scene",
    "encode_pgm",
    "decode_pgm",
    "write_pgm",
    "read_pgm",
    "MASK_SIZE",
    "DEFAULT_CORRUPTION_FRAC",
)
