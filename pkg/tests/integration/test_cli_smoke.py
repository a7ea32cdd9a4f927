import csv

import pytest

from gaterace._internal.cli.main import main
from gaterace.config import SNAPSHOT_FILE
from gaterace.ppo import CURVE_FILE, TRAIN_STATE_FILE, checkpoint_name

RUN_CONFIG = """\
mode = "state"
track = "mini"
seed = 4
workers = 1

[ppo]
n_envs = 2
rollout_steps = 8
batch = 16
minibatch = 8
epochs = 1
total_steps = 32
checkpoint_every = 0
"""


@pytest.fixture()
def config_path(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text(RUN_CONFIG)
    return path


def train_and_eval(config_path, out_dir):
    assert main(["train", "--config", str(config_path), "--out", str(out_dir)]) == 0
    checkpoint = out_dir / checkpoint_name(32)
    eval_args = ["--n-envs", "2", "--steps", "20", "--csv", str(out_dir / "eval.csv")]
    assert main(["eval", "--config", str(config_path), "--checkpoint", str(checkpoint), *eval_args]) == 0


def test_train_then_evaluate(config_path, tmp_path, capsys):
    out_dir = tmp_path / "run"

    train_and_eval(config_path, out_dir)

    assert (out_dir / SNAPSHOT_FILE).exists()
    assert (out_dir / TRAIN_STATE_FILE).exists()
    with (out_dir / CURVE_FILE).open(newline="") as stream:
        assert [row[0] for row in csv.reader(stream)][1:] == ["16", "32"]
    assert "trained 2 updates, 32 env steps" in capsys.readouterr().out


def test_commands_are_reproducible(config_path, tmp_path):
    for name in ("first", "second"):
        train_and_eval(config_path, tmp_path / name)

    for file_name in (CURVE_FILE, "eval.csv", checkpoint_name(32)):
        assert (tmp_path / "first" / file_name).read_bytes() == (tmp_path / "second" / file_name).read_bytes()


def test_resume_continues_run(config_path, tmp_path):
    out_dir = tmp_path / "run"
    assert main(["train", "--config", str(config_path), "--out", str(out_dir)]) == 0

    assert main(["train", "--resume", str(out_dir), "--steps", "48"]) == 0

    with (out_dir / CURVE_FILE).open(newline="") as stream:
        assert [row[0] for row in csv.reader(stream)][1:] == ["16", "32", "48"]
    assert (out_dir / checkpoint_name(48)).exists()
