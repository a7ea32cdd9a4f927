import numpy as np
import pytest
from tests_helpers import tiny_spec

from gaterace import Mode
from gaterace.errors import InvalidParametersError, SpecMismatchError
from gaterace.evalkit import (
    EvalConfig,
    NetworkPolicy,
    ReplayPolicy,
    evaluate,
    jittered_start,
    sensitivity_sweep,
)
from gaterace.neural import NetworkSpec, init_params, save_params
from gaterace.quadsim import Action, QuadParams, normalize_action
from gaterace.track import load_track

MINI = load_track("mini")
FREE_FALL = ReplayPolicy([[-1.0, 0.0, 0.0, 0.0]])
HOVER = ReplayPolicy([normalize_action(Action.hover(QuadParams()), QuadParams())])


def test_falling_policy_never_succeeds():
    report = evaluate(FREE_FALL, MINI, n_envs=4, steps=100, seed=1)

    assert report.sr == 0.0
    assert report.lt is None
    assert report.mge is None
    assert report.breakdown["crash_ground"] == 100.0
    assert all(rollout.duration < 1.0 for rollout in report.rollouts)


def test_hovering_policy_times_out():
    report = evaluate(HOVER, MINI, n_envs=3, steps=30, seed=1)

    assert report.breakdown["timeout"] == 100.0
    assert [rollout.duration for rollout in report.rollouts] == pytest.approx([0.6] * 3)
    assert [rollout.index for rollout in report.rollouts] == [0, 1, 2]


def test_evaluation_is_reproducible(rng):
    policy = ReplayPolicy(rng.uniform(-1, 1, size=(40, 4)))

    first = evaluate(policy, MINI, n_envs=4, steps=40, seed=9)
    second = evaluate(policy, MINI, n_envs=4, steps=40, seed=9)

    assert first == second


def test_worker_threads_do_not_change_the_report(rng):
    policy = ReplayPolicy(rng.uniform(-1, 1, size=(40, 4)))

    serial = evaluate(policy, MINI, n_envs=5, steps=40, seed=4)
    threaded = evaluate(policy, MINI, n_envs=5, steps=40, seed=4, workers=3)

    assert serial == threaded


def test_network_policy_acts_with_clipped_mean(rng):
    spec = tiny_spec(Mode.STATE)
    params = init_params(spec, rng)
    params["actor.out.b"][...] = [3.0, -3.0, 0.5, 0.0]
    policy = NetworkPolicy(params, spec)

    report = evaluate(policy, MINI, n_envs=2, steps=5, seed=0, record_episode=True)

    actions = np.array([row[14:18] for row in report.episode_log.rows])
    assert actions.shape[1] == 4
    assert np.all(np.abs(actions) <= 1.0)
    assert np.allclose(actions[:, :2], [[1.0, -1.0]] * len(actions), atol=0.05)


def test_policy_from_checkpoint(rng, tmp_path):
    spec = NetworkSpec(mode=Mode.STATE)
    path = save_params(init_params(spec, rng), spec, tmp_path / "policy.bin")

    report = evaluate(path, MINI, n_envs=2, steps=5, mode=Mode.STATE)

    assert report.n_rollouts == 2
    with pytest.raises(SpecMismatchError):
        evaluate(path, MINI, n_envs=2, steps=5, mode=Mode.PIXEL_ASYM)


def test_episode_log_follows_first_rollout():
    report = evaluate(FREE_FALL, MINI, n_envs=2, steps=100, record_episode=True)

    rows = report.episode_log.rows
    assert len(rows) == round(report.rollouts[0].duration / 0.02)
    assert rows[-1][-1] == "crash_ground"


def test_jittered_start_stays_near_start_pose(rng):
    position, _ = MINI.start_pose()

    for _ in range(100):
        entry = jittered_start(MINI, QuadParams(), rng, 0.1)
        assert np.all(np.abs(entry.state.p_WB - position) <= 0.1)
        assert entry.i == 0
        assert not entry.state.v_W.any()


@pytest.mark.parametrize("actions", [np.zeros((3, 3)), np.zeros((0, 4))])
def test_replay_rejects_malformed_actions(actions):
    with pytest.raises(ValueError):
        ReplayPolicy(actions)


def test_replay_holds_last_action():
    policy = ReplayPolicy([[0.1, 0.0, 0.0, 0.0], [0.2, 0.0, 0.0, 0.0]])

    assert policy.act(0, [None, None])[:, 0].tolist() == [0.1, 0.1]
    assert policy.act(7, [None])[:, 0].tolist() == [0.2]


def test_sweep_covers_every_direction():
    rows = sensitivity_sweep(FREE_FALL, MINI, magnitudes=(0.0, 0.25, 0.5), seed=2, n_envs=2, steps=60)

    assert [row.direction for row in rows[::3]] == ["+x", "-x", "+y", "-y", "+z", "-z"]
    assert [row.magnitude for row in rows[:3]] == [0.0, 0.25, 0.5]

    plain = evaluate(FREE_FALL, MINI, n_envs=2, steps=60, seed=2)
    for row in rows[::3]:
        assert (row.sr, row.mge, row.lt) == (plain.sr, plain.mge, plain.lt)
    for k in range(0, len(rows), 3):
        srs = [row.sr for row in rows[k:k + 3]]
        assert srs == sorted(srs, reverse=True)


def test_invalid_eval_config():
    assert EvalConfig().laps == 3
    with pytest.raises(InvalidParametersError):
        EvalConfig(n_envs=0)
    with pytest.raises(InvalidParametersError):
        EvalConfig(magnitudes=(0.1, -0.1))
