import math

import numpy as np
import pytest
from tests_helpers import straight_track

from gaterace.errors import TrackValidationError
from gaterace.track import Gate, Track


def test_default_gate_geometry():
    gate = Gate(position=(0.0, 0.0, 1.5))

    assert gate.inner_side == 1.5
    assert gate.frame_width == 0.2
    assert np.allclose(gate.normal, [0.0, 1.0, 0.0])


@pytest.mark.parametrize(
    ["yaw", "normal"],
    [
        (0.0, [0.0, 1.0, 0.0]),
        (-90.0, [1.0, 0.0, 0.0]),
        (90.0, [-1.0, 0.0, 0.0]),
        (180.0, [0.0, -1.0, 0.0]),
    ],
)
def test_gate_normal_follows_yaw(yaw, normal):
    assert np.allclose(Gate(position=(0.0, 0.0, 1.5), yaw=yaw).normal, normal, atol=1e-12)


def test_local_and_world_frames_are_inverse():
    gate = Gate(position=(1.0, -2.0, 3.0), yaw=37.0, pitch=10.0, roll=-5.0)
    point = np.array([0.3, -0.7, 1.1])

    assert np.allclose(gate.to_local(gate.to_world(point)), point)
    assert np.allclose(gate.R_WG.T @ gate.R_WG, np.eye(3), atol=1e-12)


def test_inner_corners_lie_in_gate_plane():
    gate = Gate(position=(2.0, 0.0, 1.5), yaw=-90.0)
    corners = gate.inner_corners()

    assert corners.shape == (4, 3)
    assert np.allclose(corners[:, 0], 2.0)
    assert np.allclose(np.abs(corners[:, 1]), 0.75)
    assert np.allclose(np.abs(corners[:, 2] - 1.5), 0.75)


def test_cyclic_target_index_wraps():
    track = straight_track(n_gates=3, cyclic=True)

    assert [track.target_index(i) for i in range(7)] == [0, 1, 2, 0, 1, 2, 0]
    assert not track.is_finished(100)


def test_acyclic_target_index_saturates():
    track = straight_track(n_gates=3)

    assert [track.target_index(i) for i in range(5)] == [0, 1, 2, 2, 2]
    assert not track.is_finished(2)
    assert track.is_finished(3)


def test_default_start_pose_faces_first_gate():
    track = Track(gates=[Gate(position=(2.0, 0.0, 1.5), yaw=-90.0)])
    position, yaw = track.start_pose()

    assert np.allclose(position, [0.0, 0.0, 1.5])
    assert yaw == pytest.approx(0.0)


def test_explicit_start_pose():
    track = straight_track()
    position, yaw = track.start_pose()

    assert position.tolist() == [0.0, 0.0, 1.5]
    assert yaw == 0.0


def test_empty_track_is_rejected():
    with pytest.raises(TrackValidationError) as exc_info:
        Track(gates=[])

    assert [problem.gate_index for problem in exc_info.value.exceptions] == [None]


def test_every_problem_is_reported_at_once():
    gates = [
        Gate(position=(0.0, 0.0, 1.5)),
        Gate(position=(0.2, 0.0, 1.5)),
        Gate(position=(5.0, 0.0, -1.0)),
        Gate(position=(9.0, 0.0, 1.5), inner_side=-1.0),
    ]
    with pytest.raises(TrackValidationError) as exc_info:
        Track(gates=gates, cyclic=False, name="broken")

    problems = {(problem.gate_index, problem.msg.split()[0]) for problem in exc_info.value.exceptions}
    assert problems == {(1, "gate"), (2, "gate"), (3, "inner_side")}
    assert "broken" in exc_info.value.message


def test_cyclic_spacing_checks_closing_pair():
    gates = [Gate(position=(0.0, 0.0, 1.5)), Gate(position=(5.0, 0.0, 1.5)), Gate(position=(0.1, 0.3, 1.5))]

    Track(gates=gates, cyclic=False)
    with pytest.raises(TrackValidationError) as exc_info:
        Track(gates=gates, cyclic=True)

    assert [problem.gate_index for problem in exc_info.value.exceptions] == [0]


def test_non_finite_position_is_rejected():
    with pytest.raises(TrackValidationError) as exc_info:
        Track(gates=[Gate(position=(math.nan, 0.0, 1.5))])

    assert exc_info.value.exceptions[0].gate_index == 0


def test_geometry_stacks_gate_data():
    track = straight_track(n_gates=3)
    geometry = track.geometry

    assert geometry.centers.shape == (3, 3)
    assert geometry.rotations.shape == (3, 3, 3)
    assert geometry.dimensions[0].tolist() == pytest.approx([0.75, 0.2, 0.025])
