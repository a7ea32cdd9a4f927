import math

import numpy as np
import pytest

from gaterace.errors import InvalidParametersError
from gaterace.quadsim import (
    QuadParams,
    RandomizationSpec,
    allocation_matrix,
    quaternion_from_euler,
    quaternion_multiply,
    quaternion_to_rotation,
    randomize,
)


def test_disabled_randomization_is_identity(quad_params, rng):
    assert randomize(quad_params, RandomizationSpec.disabled(), rng) == quad_params


def test_randomized_parameters_stay_in_bounds(quad_params, rng):
    spec = RandomizationSpec()
    for _ in range(1000):
        sample = randomize(quad_params, spec, rng)
        assert abs(sample.c_f / quad_params.c_f - 1) <= spec.thrust_frac
        assert abs(sample.m / quad_params.m - 1) <= spec.mass_frac
        assert abs(sample.J[2][2] / quad_params.J[2][2] - 1) <= spec.inertia_frac
        assert abs(sample.k_v_quad[0] / quad_params.k_v_quad[0] - 1) <= spec.drag_frac
        assert sample.arm_length == quad_params.arm_length


def test_inertia_is_scaled_as_a_whole(quad_params, rng):
    sample = randomize(quad_params, RandomizationSpec(), rng)

    ratio = np.array(sample.J) / np.array(quad_params.J)
    diagonal = np.diag(ratio)
    assert np.allclose(diagonal, diagonal[0])


def test_randomization_depends_on_stream_only(quad_params):
    first = randomize(quad_params, RandomizationSpec(), np.random.default_rng(3))
    second = randomize(quad_params, RandomizationSpec(), np.random.default_rng(3))

    assert first == second


@pytest.mark.parametrize(
    ["kwargs", "fragment"],
    [
        ({"m": 0.0}, "m must be positive"),
        ({"Omega_min": 4000.0}, "motor limits"),
        ({"J": ((1e-3, 1e-4, 0.0), (0.0, 1e-3, 0.0), (0.0, 0.0, 1e-3))}, "symmetric"),
        ({"J": ((-1e-3, 0.0, 0.0), (0.0, 1e-3, 0.0), (0.0, 0.0, 1e-3))}, "positive definite"),
        ({"c_max": -1.0}, "action limits"),
    ],
)
def test_invalid_vehicle(kwargs, fragment):
    with pytest.raises(InvalidParametersError, match=fragment):
        QuadParams(**kwargs)


def test_negative_randomization_is_rejected():
    with pytest.raises(InvalidParametersError, match="pos_xy, vel"):
        RandomizationSpec(pos_xy=-0.1, vel=-1.0)


def test_allocation_matrix_maps_equal_speeds_to_pure_thrust():
    allocation = allocation_matrix(0.15, 0.016)

    wrench = allocation @ np.ones(4)
    assert wrench[0] == pytest.approx(4.0)
    assert np.allclose(wrench[1:], 0.0, atol=1e-15)


def test_yaw_quaternion_rotates_x_to_y():
    rotation = quaternion_to_rotation(quaternion_from_euler(0.0, 0.0, math.pi / 2))

    assert np.allclose(rotation @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], atol=1e-15)


def test_quaternion_composition_matches_rotations(rng):
    a = quaternion_from_euler(*rng.uniform(-1, 1, size=3))
    b = quaternion_from_euler(*rng.uniform(-1, 1, size=3))

    composed = quaternion_to_rotation(quaternion_multiply(a, b))

    assert np.allclose(composed, quaternion_to_rotation(a) @ quaternion_to_rotation(b), atol=1e-12)
    assert np.allclose(quaternion_multiply([1.0, 0.0, 0.0, 0.0], a), a)
