from typing import Optional, Sequence

import numpy as np

from ..common import FloatArray
from ..errors import NonFiniteStateError
from .kernels import derivative_kernel, rate_control_kernel, rk4_kernel
from .params import QuadParams
from .state import STATE_SIZE, Action, QuadState, QuadStateDerivative

DEFAULT_DT = 0.02

_COMPONENT_NAMES = (
    *(f"p_WB[{i}]" for i in range(3)),
    *(f"q_WB[{i}]" for i in range(4)),
    *(f"v_W[{i}]" for i in range(3)),
    *(f"omega_B[{i}]" for i in range(3)),
    *(f"Omega[{i}]" for i in range(4)),
)


def derivative(state: QuadState, params: QuadParams, omega_ss: Sequence[float]) -> QuadStateDerivative:
    assert state.is_finite(), "state must be finite"
    pack = params.pack
    out = np.empty(STATE_SIZE)
    derivative_kernel(
        state.vector, np.asarray(omega_ss, dtype=np.float64),
        pack.mass, pack.inertia, pack.inertia_inv, pack.c_f, pack.k_mot,
        pack.allocation, pack.k_v_lin, pack.k_v_quad, pack.gravity,
        out,
    )
    return QuadStateDerivative(out)


def rate_controller(
    state: QuadState,
    action: Action,
    params: QuadParams,
    gains: Optional[Sequence[float]] = None,
) -> FloatArray:
    """Turns a CTBR command into four motor-speed setpoints.

    The loop is proportional on the body-rate error with gyroscopic feedforward,
    the desired wrench is mixed through the inverse allocation matrix.
    Saturation of thrust and motor speeds is silent.
    """
    pack = params.pack
    rate_gains = pack.rate_gains if gains is None else np.asarray(gains, dtype=np.float64)
    out = np.empty(4)
    rate_control_kernel(
        state.omega_B, float(action.c), np.asarray(action.omega_ref, dtype=np.float64),
        pack.mass, pack.inertia, pack.allocation_inv, pack.c_f, rate_gains, pack.omega_min, pack.omega_max,
        out,
    )
    return out


def integrate(
    state: QuadState,
    params: QuadParams,
    omega_ss: Sequence[float],
    dt: float,
    substeps: int = 1,
) -> QuadState:
    """Advances the state by ``dt`` with RK4 while the motor setpoints are held"""
    pack = params.pack
    result = rk4_kernel(
        state.vector, np.asarray(omega_ss, dtype=np.float64), float(dt), int(substeps),
        pack.mass, pack.inertia, pack.inertia_inv, pack.c_f, pack.k_mot,
        pack.allocation, pack.k_v_lin, pack.k_v_quad, pack.gravity,
        pack.omega_min, pack.omega_max,
    )
    bad = ~np.isfinite(result)
    if bad.any():
        raise NonFiniteStateError(
            components=tuple(name for name, flag in zip(_COMPONENT_NAMES, bad) if flag),
            dt=dt,
        )
    return QuadState(result)


def step(
    state: QuadState,
    action: Action,
    params: QuadParams,
    dt: float = DEFAULT_DT,
    *,
    substeps: int = 1,
    controller_params: Optional[QuadParams] = None,
) -> QuadState:
    """Runs the rate controller once and integrates the dynamics over ``dt``.

    ``controller_params`` describes what the flight controller believes about the vehicle,
    it defaults to ``params``. Passing nominal parameters here while ``params`` is randomized
    makes the mismatch visible to the policy.
    """
    omega_ss = rate_controller(state, action, params if controller_params is None else controller_params)
    return integrate(state, params, omega_ss, dt, substeps)
