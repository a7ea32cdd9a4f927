import csv
from functools import partial

import numpy as np
import pytest
from tests_helpers import no_randomization, raises_exc, straight_track, with_notes

from gaterace import Mode
from gaterace._internal.raceenv.episode_log import COLUMNS
from gaterace.errors import ContractViolationError, CountMismatchError
from gaterace.raceenv import (
    EnvConfig,
    EpisodeLog,
    RaceEnv,
    VectorEnv,
    next_observations,
    spawn_generators,
    stack_observations,
)


def factory(mode: Mode = Mode.STATE, randomize: bool = True, **config):
    kwargs = {} if randomize else {"randomization": no_randomization()}
    return partial(RaceEnv, straight_track(n_gates=3), config=EnvConfig(mode=mode, **config), **kwargs)


def run_trace(envs: VectorEnv, n_steps: int, seed: int = 99):
    actions_rng = np.random.default_rng(seed)
    rewards = []
    results = envs.reset()
    for _ in range(n_steps):
        actions = actions_rng.uniform(-1, 1, size=(len(envs), 4))
        results = next_observations(envs.step(actions))
        rewards.append([result.reward for result in results])
    return np.array(rewards), stack_observations(results).full_state


def test_spawned_streams_do_not_depend_on_count():
    first = [rng.random() for rng in spawn_generators(5, 3)]
    second = [rng.random() for rng in spawn_generators(5, 4)][:3]

    assert first == second
    assert len(set(first)) == 3


def test_single_env_matches_scalar_env():
    envs = VectorEnv.from_factory(factory(), 1, seed=17)
    env = factory()(spawn_generators(17, 1)[0])
    actions_rng = np.random.default_rng(1)

    assert np.array_equal(envs.reset()[0].full_state.vector, env.reset().full_state.vector)
    for _ in range(30):
        action = actions_rng.uniform(-1, 1, size=4)
        vector_result = envs.step(action[None, :])[0]
        scalar_result = env.step(action)
        assert vector_result.reward == scalar_result.reward
        assert np.array_equal(vector_result.full_state.vector, scalar_result.full_state.vector)
        if scalar_result.done:
            assert vector_result.reset_result is not None
            assert np.array_equal(vector_result.reset_result.full_state.vector, env.reset().full_state.vector)


def test_fixed_seeds_give_identical_traces():
    first = run_trace(VectorEnv.from_factory(factory(), 100, seed=3), 20)
    second = run_trace(VectorEnv.from_factory(factory(), 100, seed=3), 20)

    assert np.array_equal(first[0], second[0])
    assert np.array_equal(first[1], second[1])


def test_parallel_stepping_matches_sequential():
    sequential = run_trace(VectorEnv.from_factory(factory(Mode.PIXEL_ASYM), 8, seed=21), 15)
    with VectorEnv.from_factory(factory(Mode.PIXEL_ASYM), 8, seed=21, workers=4) as envs:
        parallel = run_trace(envs, 15)

    assert np.array_equal(sequential[0], parallel[0])
    assert np.array_equal(sequential[1], parallel[1])


def test_action_count_must_match():
    envs = VectorEnv.from_factory(factory(), 3, seed=0)
    envs.reset()

    with pytest.raises(CountMismatchError) as exc_info:
        envs.step(np.zeros((2, 4)))

    assert (exc_info.value.expected, exc_info.value.actual) == (3, 2)


@pytest.mark.parametrize("workers", [1, 3])
def test_failure_names_the_environment(workers):
    def fail(action):
        raise ContractViolationError("action rejected")

    with VectorEnv.from_factory(factory(), 3, seed=0, workers=workers) as envs:
        envs.reset()
        envs.envs[1].step = fail

        raises_exc(
            with_notes(ContractViolationError("action rejected"), "while stepping environment 1"),
            lambda: envs.step(np.zeros((3, 4))),
        )


@pytest.mark.parametrize("workers", [1, 2])
def test_step_some_leaves_finished_envs_alone(workers):
    with VectorEnv.from_factory(factory(randomize=False, episode_steps=1), 3, seed=0, workers=workers) as envs:
        envs.reset()

        results = envs.step_some([0, 2], np.tile([-0.346, 0.0, 0.0, 0.0], (2, 1)))

        assert all(result.done and result.reset_result is None for result in results)
        assert [env.done for env in envs.envs] == [True, False, True]


def test_finished_envs_are_reset():
    envs = VectorEnv.from_factory(factory(randomize=False, episode_steps=3), 2, seed=0)
    envs.reset()
    hover = np.tile([-0.346, 0.0, 0.0, 0.0], (2, 1))
    for _ in range(2):
        assert not any(result.done for result in envs.step(hover))

    results = envs.step(hover)
    assert all(result.done for result in results)
    assert all(result.reset_result is not None for result in results)
    assert all(result.reset_result.t == 0.0 for result in results)
    assert next_observations(results) == [result.reset_result for result in results]
    assert not any(env.done for env in envs.envs)


def test_stacked_state_observations():
    batch = stack_observations(VectorEnv.from_factory(factory(), 5, seed=0).reset())

    assert batch.masks is None
    assert batch.history.shape == (5, 12)
    assert batch.full_state.shape == (5, 20)
    assert len(batch) == 5
    assert batch.take([0, 2]).full_state.shape == (2, 20)


def test_stacked_pixel_observations():
    batch = stack_observations(VectorEnv.from_factory(factory(Mode.PIXEL_SYM), 3, seed=0).reset())

    assert batch.masks is not None
    assert batch.masks.shape == (3, 84, 84)


def test_episode_log_csv(tmp_path):
    env = factory(episode_steps=4)(np.random.default_rng(0))
    env.reset(env.buffer.slot(0)[0])
    log = EpisodeLog()
    action = [-0.346, 0.0, 0.0, 0.0]
    result = env.step(action)
    log.record(result, action)
    while not result.done:
        result = env.step(action)
        log.record(result, action)

    path = log.write_csv(tmp_path / "logs" / "episode.csv")
    with path.open(newline="") as stream:
        rows = list(csv.DictReader(stream))

    assert tuple(rows[0]) == COLUMNS
    assert len(rows) == 4
    assert [float(row["t"]) for row in rows] == pytest.approx([0.02, 0.04, 0.06, 0.08])
    assert float(rows[0]["a_c"]) == -0.346
    assert rows[-1]["events"] == "timeout"
    assert all(row["events"] == "" for row in rows[:-1])
    assert float(rows[-1]["p_z"]) == pytest.approx(1.5, abs=0.05)
