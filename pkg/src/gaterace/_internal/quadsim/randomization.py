from dataclasses import replace

import numpy as np

from .params import QuadParams, RandomizationSpec


def _factor(rng: np.random.Generator, frac: float) -> float:
    return float(rng.uniform(1.0 - frac, 1.0 + frac))


def randomize(params: QuadParams, spec: RandomizationSpec, rng: np.random.Generator) -> QuadParams:
    """Returns a copy with independently scaled thrust, drag, inertia and mass.

    Draw order is fixed, so the result depends only on the stream position of ``rng``.
    """
    thrust = _factor(rng, spec.thrust_frac)
    drag_lin = _factor(rng, spec.drag_frac)
    drag_quad = _factor(rng, spec.drag_frac)
    inertia = _factor(rng, spec.inertia_frac)
    mass = _factor(rng, spec.mass_frac)
    return replace(
        params,
        c_f=params.c_f * thrust,
        k_v_lin=tuple(k * drag_lin for k in params.k_v_lin),  # type: ignore[arg-type]
        k_v_quad=tuple(k * drag_quad for k in params.k_v_quad),  # type: ignore[arg-type]
        J=tuple(tuple(j * inertia for j in row) for row in params.J),  # type: ignore[arg-type]
        m=params.m * mass,
    )
