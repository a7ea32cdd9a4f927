import csv
from dataclasses import replace
from functools import partial

import numpy as np
import pytest
from dirty_equals import IsStr
from tests_helpers import straight_track, tiny_spec

from gaterace import Mode
from gaterace.errors import ContractViolationError
from gaterace.neural import load_params
from gaterace.ppo import CURVE_COLUMNS, TRAIN_STATE_FILE, PpoConfig, checkpoint_name, train
from gaterace.raceenv import EnvConfig, RaceEnv

SPEC = tiny_spec(Mode.STATE)
CONFIG = PpoConfig(
    n_envs=2, rollout_steps=8, batch=16, minibatch=8, epochs=2, total_steps=48, checkpoint_every=2, chunk_size=4,
)
FACTORY = partial(RaceEnv, straight_track(n_gates=3), config=EnvConfig(mode=Mode.STATE, episode_steps=20))


def read_curve(path):
    with path.open(newline="") as stream:
        return list(csv.reader(stream))


def test_writes_curve_and_checkpoints(tmp_path):
    result = train(FACTORY, CONFIG, Mode.STATE, 3, tmp_path, spec=SPEC)

    rows = read_curve(result.curve_path)
    assert tuple(rows[0]) == CURVE_COLUMNS
    assert [int(row[0]) for row in rows[1:]] == [16, 32, 48]
    assert result.env_steps == 48
    assert result.updates == 3
    assert [path.name for path in result.checkpoints] == [checkpoint_name(32), checkpoint_name(48)]
    assert result.last_checkpoint == tmp_path / "ckpt-000000000048.bin"
    assert (tmp_path / TRAIN_STATE_FILE).exists()

    loaded = load_params(result.last_checkpoint, SPEC)
    assert loaded.flat.tobytes() == result.params.flat.tobytes()


def test_curve_fields_are_numbers(tmp_path):
    result = train(FACTORY, CONFIG, Mode.STATE, 3, tmp_path, spec=SPEC)

    with result.curve_path.open(newline="") as stream:
        rows = list(csv.DictReader(stream))

    number = IsStr(regex=r"-?(\d+(\.\d*)?(e[+-]\d+)?|nan)")
    assert rows[-1] == {column: number for column in CURVE_COLUMNS}


def test_learning_rate_follows_schedule(tmp_path):
    result = train(FACTORY, CONFIG, Mode.STATE, 3, tmp_path, spec=SPEC)

    lrs = [float(row[-1]) for row in read_curve(result.curve_path)[1:]]
    assert lrs[0] == pytest.approx(CONFIG.lr_start)
    assert lrs[0] > lrs[1] > lrs[2] > CONFIG.lr_end


def test_same_seed_gives_identical_curve(tmp_path):
    first = train(FACTORY, CONFIG, Mode.STATE, 11, tmp_path / "a", spec=SPEC)
    second = train(FACTORY, CONFIG, Mode.STATE, 11, tmp_path / "b", spec=SPEC, workers=2)

    assert first.curve_path.read_text() == second.curve_path.read_text()
    assert np.array_equal(first.params.flat, second.params.flat)


def test_different_seeds_differ(tmp_path):
    first = train(FACTORY, CONFIG, Mode.STATE, 1, tmp_path / "a", spec=SPEC)
    second = train(FACTORY, CONFIG, Mode.STATE, 2, tmp_path / "b", spec=SPEC)

    assert not np.array_equal(first.params.flat, second.params.flat)


def test_resume_appends_to_curve(tmp_path):
    train(FACTORY, replace(CONFIG, total_steps=32), Mode.STATE, 3, tmp_path, spec=SPEC)

    result = train(FACTORY, CONFIG, Mode.STATE, 3, tmp_path, spec=SPEC, resume=True)

    rows = read_curve(result.curve_path)
    assert [row[0] for row in rows].count(CURVE_COLUMNS[0]) == 1
    assert [int(row[0]) for row in rows[1:]] == [16, 32, 48]
    assert result.updates == 3
    assert [path.name for path in result.checkpoints] == [checkpoint_name(48)]


def test_resume_past_budget_does_nothing(tmp_path):
    first = train(FACTORY, CONFIG, Mode.STATE, 3, tmp_path, spec=SPEC)

    again = train(FACTORY, CONFIG, Mode.STATE, 3, tmp_path, spec=SPEC, resume=True)

    assert again.env_steps == 48
    assert again.checkpoints == []
    assert np.array_equal(again.params.flat, first.params.flat)
    assert len(read_curve(again.curve_path)) == 4


def test_spec_for_another_mode_is_rejected(tmp_path):
    with pytest.raises(ContractViolationError):
        train(FACTORY, CONFIG, Mode.PIXEL_ASYM, 3, tmp_path, spec=SPEC)
