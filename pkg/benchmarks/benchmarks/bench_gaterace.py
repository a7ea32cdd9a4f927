# pylint: disable=import-error,no-name-in-module
"""pyperf suite for the two inner loops that bound training throughput

Run ``bench_gaterace -o results.json`` and compare runs with ``python -m pyperf compare_to``.
"""
import gc
from typing import Any, Callable, Iterable, Tuple

import numpy as np
import pyperf

from gaterace.gatecam import MASK_SIZE, benchmark_scene, render_gate_mask
from gaterace.quadsim import DEFAULT_DT, Action, QuadParams, QuadState, step

GATE_COUNTS = (0, 1, 2, 4, 7, 8)


def mask_plan(n_gates: int) -> Tuple[Callable[..., Any], Iterable[Any]]:
    scene = benchmark_scene(n_gates)
    rng = np.random.default_rng(0)
    args = (scene.gates, scene.T_WB, scene.extrinsics, scene.intrinsics, scene.corruption_frac, rng)
    render_gate_mask(*args)
    return render_gate_mask, args


def dynamics_plan() -> Tuple[Callable[..., Any], Iterable[Any]]:
    params = QuadParams()
    args = (QuadState.hover(params), Action.hover(params), params, DEFAULT_DT)
    step(*args)
    return step, args


def test_mask_plan():
    func, args = mask_plan(2)
    mask = func(*args)

    assert mask.pixels.shape == (MASK_SIZE, MASK_SIZE)
    assert mask.n_segments > 0


def test_dynamics_plan():
    func, args = dynamics_plan()
    state = func(*args)

    assert np.allclose(state.p_WB, (0.0, 0.0, 1.0), atol=1e-4)


def main():
    runner = pyperf.Runner()
    plans = [(f"mask-{n_gates}-gates", mask_plan(n_gates)) for n_gates in GATE_COUNTS]
    plans.append(("dynamics-step", dynamics_plan()))

    gc.collect()
    for name, (func, args) in plans:
        runner.bench_func(name, func, *args)


if __name__ == "__main__":
    main()
