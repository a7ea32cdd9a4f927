import math

import numpy as np
import pytest
from tests_helpers import drag_free_params, hover_state

from gaterace.errors import NonFiniteStateError
from gaterace.quadsim import (
    GRAVITY,
    Action,
    QuadParams,
    QuadState,
    allocation_matrix,
    denormalize_action,
    derivative,
    dynamics_benchmark,
    integrate,
    normalize_action,
    rate_controller,
    step,
)


def total_thrust(params: QuadParams, motor_speeds) -> float:
    return float(np.sum(params.c_f * np.asarray(motor_speeds) ** 2))


def test_hover_derivative_is_zero(quad_params):
    state = hover_state(quad_params)
    result = derivative(state, quad_params, [quad_params.hover_motor_speed] * 4)

    assert np.allclose(result.v_dot, 0.0, atol=1e-12)
    assert np.allclose(result.omega_dot, 0.0, atol=1e-12)
    assert np.allclose(result.Omega_dot, 0.0, atol=1e-9)
    assert np.allclose(result.p_dot, 0.0)


def test_free_fall_derivative(quad_params):
    state = QuadState.from_components((0.0, 0.0, 5.0))
    result = derivative(state, quad_params, np.zeros(4))

    assert result.v_dot.tolist() == [0.0, 0.0, -GRAVITY]


def test_spin_coupling():
    inertia = np.diag([1.0, 2.0, 3.0]) * 1e-3
    params = QuadParams(J=tuple(map(tuple, inertia)))
    omega = np.array([1.0, 1.0, 0.0])
    state = QuadState.from_components((0.0, 0.0, 5.0), omega_B=omega)

    result = derivative(state, params, np.zeros(4))

    expected = -np.linalg.inv(inertia) @ np.cross(omega, inertia @ omega)
    assert np.allclose(result.omega_dot, expected, rtol=0, atol=1e-12)
    assert np.allclose(result.omega_dot, [0.0, 0.0, -1 / 3], atol=1e-12)


def test_hover_command_gives_equal_motor_speeds(quad_params):
    speeds = rate_controller(hover_state(quad_params), Action(c=GRAVITY), quad_params)

    assert np.allclose(speeds, speeds[0], rtol=0, atol=1e-9)
    assert total_thrust(quad_params, speeds) == pytest.approx(GRAVITY * quad_params.m, rel=1e-12)


def test_pure_yaw_command_keeps_total_thrust(quad_params):
    state = QuadState.from_components((0.0, 0.0, 1.0))
    collective = 15.0
    speeds = rate_controller(state, Action(c=collective, omega_ref=(0.0, 0.0, 5.0)), quad_params)
    thrusts = quad_params.c_f * speeds ** 2

    assert speeds[0] == pytest.approx(speeds[1])
    assert speeds[2] == pytest.approx(speeds[3])
    assert thrusts[0] > thrusts[2]
    assert abs(thrusts.sum() - quad_params.m * collective) < 1e-9

    wrench = allocation_matrix(quad_params.arm_length, quad_params.yaw_moment_ratio) @ thrusts
    yaw_torque = quad_params.J[2][2] * quad_params.rate_gains[2] * 5.0
    assert np.allclose(wrench, [quad_params.m * collective, 0.0, 0.0, yaw_torque], rtol=0, atol=1e-9)


def test_saturated_command_stays_within_motor_limits(quad_params):
    state = QuadState.from_components((0.0, 0.0, 1.0), omega_B=(-5.0, 0.0, 0.0))
    speeds = rate_controller(state, Action(c=quad_params.c_max, omega_ref=(10.0, 0.0, 0.0)), quad_params)

    assert np.all(speeds >= quad_params.Omega_min)
    assert np.all(speeds <= quad_params.Omega_max)


def test_hover_hold(quad_params):
    state = hover_state(quad_params)
    start = state.p_WB.copy()
    for _ in range(50):
        state = step(state, Action.hover(quad_params), quad_params)

    assert np.linalg.norm(state.p_WB - start) < 1e-6


def test_ballistic_fall():
    params = drag_free_params()
    state = QuadState.from_components((0.0, 0.0, 10.0))
    for _ in range(50):
        state = step(state, Action(c=0.0), params)

    assert state.p_WB[2] == pytest.approx(10.0 - GRAVITY / 2, abs=1e-4)
    assert state.Omega.tolist() == [0.0] * 4


def _reference_run(substeps: int) -> np.ndarray:
    params = QuadParams()
    speeds = params.hover_motor_speed * np.array([1.02, 0.98, 1.01, 0.99])
    state = QuadState.from_components(
        (0.0, 0.0, 5.0),
        v_W=(3.0, 1.0, 0.5),
        omega_B=(0.5, -0.3, 0.8),
        Omega=speeds,
    )
    return integrate(state, params, speeds, 1.0, substeps=substeps).vector[:13]


def test_rk4_convergence_order():
    reference = _reference_run(640)
    coarse = np.linalg.norm(_reference_run(20) - reference)
    fine = np.linalg.norm(_reference_run(40) - reference)

    assert math.log2(coarse / fine) >= 3.8


def test_translational_energy_is_conserved():
    params = drag_free_params()
    state = QuadState.from_components((0.0, 0.0, 20.0), v_W=(2.0, 1.0, 3.0))

    def energy(s: QuadState) -> float:
        return 0.5 * params.m * float(s.v_W @ s.v_W) + params.m * GRAVITY * float(s.p_WB[2])

    initial = energy(state)
    for _ in range(50):
        state = step(state, Action(c=0.0), params)

    assert energy(state) == pytest.approx(initial, rel=1e-6)


def test_rotational_energy_is_conserved():
    params = drag_free_params()
    inertia = np.array(params.J)
    state = QuadState.from_components((0.0, 0.0, 20.0), omega_B=(0.5, 0.3, 0.2))

    def energy(s: QuadState) -> float:
        return 0.5 * float(s.omega_B @ inertia @ s.omega_B)

    initial = energy(state)
    for _ in range(50):
        state = integrate(state, params, np.zeros(4), 0.02)

    assert energy(state) == pytest.approx(initial, rel=1e-6)


def test_motor_speeds_converge(quad_params):
    state = QuadState.from_components((0.0, 0.0, 5.0))
    setpoint = quad_params.hover_motor_speed
    result = integrate(state, quad_params, [setpoint] * 4, 5 * quad_params.k_mot, substeps=30)

    assert np.all(np.abs(result.Omega - setpoint) < 0.01 * setpoint)


def test_quaternion_stays_normalized(quad_params, rng):
    state = hover_state(quad_params, position=(0.0, 0.0, 100.0))
    for _ in range(200):
        state = step(state, denormalize_action(rng.uniform(-1, 1, size=4), quad_params), quad_params)
        assert abs(np.linalg.norm(state.q_WB) - 1) < 1e-9
        assert np.all(state.Omega >= quad_params.Omega_min)
        assert np.all(state.Omega <= quad_params.Omega_max)


def test_step_is_deterministic(quad_params):
    state = QuadState.from_components((0.0, 0.0, 2.0), v_W=(1.0, 0.0, 0.0), omega_B=(0.1, 0.2, 0.3))
    action = Action(c=12.0, omega_ref=(1.0, -1.0, 0.5))

    first = step(state, action, quad_params)
    second = step(state, action, quad_params)

    assert np.array_equal(first.vector, second.vector)


def test_non_finite_state_is_reported(quad_params):
    state = QuadState.from_components((0.0, 0.0, 2.0), v_W=(1e200, 0.0, 0.0))

    with pytest.raises(NonFiniteStateError) as exc_info:
        integrate(state, quad_params, np.zeros(4), 0.02)

    assert exc_info.value.dt == 0.02
    assert exc_info.value.components


@pytest.mark.parametrize(
    ["normalized", "expected_c", "expected_rates"],
    [
        ([-1.0, 0.0, 0.0, 0.0], 0.0, [0.0, 0.0, 0.0]),
        ([1.0, 1.0, -1.0, 0.5], 30.0, [10.0, -10.0, 5.0]),
        ([3.0, -7.0, 0.0, 0.0], 30.0, [-10.0, 0.0, 0.0]),
    ],
)
def test_denormalize_action(quad_params, normalized, expected_c, expected_rates):
    action = denormalize_action(normalized, quad_params)

    assert action.c == pytest.approx(expected_c)
    assert list(action.omega_ref) == pytest.approx(expected_rates)


def test_normalize_inverts_denormalize(quad_params):
    normalized = np.array([0.25, -0.5, 0.75, 0.0])

    assert np.allclose(normalize_action(denormalize_action(normalized, quad_params), quad_params), normalized)


def test_dynamics_benchmark_reports_throughput():
    report = dynamics_benchmark(steps=20)

    assert report.steps == 20
    assert report.steps_per_second > 0
    assert "steps/s" in report.summary()
