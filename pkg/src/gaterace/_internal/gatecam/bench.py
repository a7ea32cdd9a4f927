import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..common import VarTuple
from ..track.model import Gate
from .camera import CameraExtrinsics, CameraIntrinsics, RigidTransform
from .render import DEFAULT_CORRUPTION_FRAC, render_gate_mask

logger = logging.getLogger(__name__)

MIN_ITERATIONS = 100


@dataclass(frozen=True)
class MaskScene:
    gates: VarTuple[Gate]
    T_WB: RigidTransform  # noqa: N815
    extrinsics: CameraExtrinsics = CameraExtrinsics.from_uptilt()
    intrinsics: CameraIntrinsics = CameraIntrinsics()
    corruption_frac: float = DEFAULT_CORRUPTION_FRAC


@dataclass(frozen=True)
class BenchmarkReport:
    n_gates: int
    iterations: int
    mean_us: float
    p99_us: float

    def summary(self) -> str:
        return (
            f"{self.n_gates} gates, {self.iterations} frames:"
            f" mean {self.mean_us:.1f} us/frame, p99 {self.p99_us:.1f} us/frame"
        )


def benchmark_scene(n_gates: int, spacing: float = 2.5) -> MaskScene:
    """A row of gates ahead of a drone hovering at the origin, alternately shifted sideways"""
    gates = tuple(
        Gate(position=(3.0 + spacing * k, 0.5 * (-1) ** k, 1.0), yaw=-90.0)
        for k in range(n_gates)
    )
    return MaskScene(gates=gates, T_WB=RigidTransform(np.eye(3), np.array([0.0, 0.0, 1.0])))


def mask_render_benchmark(scene: MaskScene, iterations: int = 1000, seed: Optional[int] = 0) -> BenchmarkReport:
    if iterations < MIN_ITERATIONS:
        raise ValueError(f"iterations must be at least {MIN_ITERATIONS}, got {iterations}")

    rng = np.random.default_rng(seed)

    def render():
        return render_gate_mask(
            scene.gates, scene.T_WB, scene.extrinsics, scene.intrinsics, scene.corruption_frac, rng,
        )

    render()  # compiles the kernels
    timings = np.empty(iterations)
    for idx in range(iterations):
        start = time.perf_counter_ns()
        render()
        timings[idx] = time.perf_counter_ns() - start

    report = BenchmarkReport(
        n_gates=len(scene.gates),
        iterations=iterations,
        mean_us=float(timings.mean() / 1e3),
        p99_us=float(np.percentile(timings, 99) / 1e3),
    )
    logger.info("Mask rendering benchmark: %s", report.summary())
    return report
