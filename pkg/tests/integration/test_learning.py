"""Scaled-down learning checks, each needs hours of CPU time"""
import csv
from functools import partial

import numpy as np
import pytest

from gaterace import Mode
from gaterace.evalkit import NetworkPolicy, evaluate
from gaterace.neural import NetworkSpec
from gaterace.ppo import PpoConfig, train
from gaterace.raceenv import EnvConfig, RaceEnv
from gaterace.track import load_track

pytestmark = [pytest.mark.slow, pytest.mark.nightly]

MINI = load_track("mini")
# a finished run of the mini track earns the terminal bonus of 10 plus about 5 for progress and passes,
# a crash costs 4
MIN_REWARD_GAIN = 8.0


def run(mode: Mode, total_steps: int, seed: int, out_dir):
    config = PpoConfig(gamma=0.98, total_steps=total_steps, checkpoint_every=0)
    factory = partial(RaceEnv, MINI, config=EnvConfig(mode=mode))
    return train(factory, config, mode, seed, out_dir, workers=4)


def mean_rewards(curve_path):
    with curve_path.open(newline="") as stream:
        return [(int(row["env_steps"]), float(row["mean_ep_reward"])) for row in csv.DictReader(stream)]


def test_state_policy_learns_mini_track(tmp_path):
    result = run(Mode.STATE, 2_000_000, 0, tmp_path)

    curve = mean_rewards(result.curve_path)
    early = next(reward for steps, reward in curve if steps >= 50_000)
    final = curve[-1][1]
    assert final - early >= MIN_REWARD_GAIN
    assert final > 0
    policy = NetworkPolicy(result.params, NetworkSpec(mode=Mode.STATE))
    assert evaluate(policy, MINI, n_envs=64, steps=1000, seed=0).sr >= 80.0


def test_privileged_critic_beats_symmetric(tmp_path):
    final = {}
    for mode in (Mode.PIXEL_ASYM, Mode.PIXEL_SYM):
        rewards = [
            mean_rewards(run(mode, 5_000_000, seed, tmp_path / f"{mode.value}-{seed}").curve_path)[-1][1]
            for seed in range(3)
        ]
        final[mode] = np.mean(rewards)

    assert final[Mode.PIXEL_ASYM] > final[Mode.PIXEL_SYM]
