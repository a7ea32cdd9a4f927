import pytest
from adaptix.load_error import LoadError
from tests_helpers import raises_exc, straight_track

from gaterace.errors import TrackValidationError, UnknownTrackError
from gaterace.track import dump_track, load_track, shipped_track_names, validate_track_file

SHIPPED = ["acyclic", "ellipse", "figure8", "glasses", "mini"]


def test_shipped_track_names():
    assert shipped_track_names() == SHIPPED


@pytest.mark.parametrize("name", SHIPPED)
def test_every_shipped_track_loads(name):
    track = load_track(name)

    assert track.name == name
    assert track.n_G >= 1


def test_mini_track():
    track = load_track("mini")

    assert not track.cyclic
    assert [gate.position for gate in track.gates] == [(2.0, 0.0, 1.5), (7.0, 0.0, 1.5)]


def test_acyclic_track_is_acyclic():
    assert not load_track("acyclic").cyclic
    assert load_track("ellipse").cyclic


def test_unknown_track_lists_available_names():
    raises_exc(UnknownTrackError(name="moebius", available=SHIPPED), lambda: load_track("moebius"))


def test_dump_then_load(tmp_path):
    track = straight_track(n_gates=3, cyclic=True)
    path = dump_track(track, tmp_path / "tracks" / "row.toml")

    assert load_track(path) == track


def test_name_defaults_to_file_stem(tmp_path):
    path = tmp_path / "hangar.toml"
    path.write_text("[[gates]]\nposition = [1.0, 2.0, 1.5]\n")

    track = load_track(path)

    assert track.name == "hangar"
    assert track.cyclic


def test_validation_reports_all_problems(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text(
        "cyclic = false\n"
        "[[gates]]\nposition = [0.0, 0.0, 1.5]\n"
        "[[gates]]\nposition = [0.1, 0.0, 1.5]\n"
        "[[gates]]\nposition = [5.0, 0.0, 0.0]\n",
    )

    with pytest.raises(TrackValidationError) as exc_info:
        validate_track_file(path)

    assert [problem.gate_index for problem in exc_info.value.exceptions] == [2, 1]
    assert any(str(path) in note for note in exc_info.value.__notes__)


def test_unknown_keys_are_rejected(tmp_path):
    path = tmp_path / "typo.toml"
    path.write_text("[[gates]]\nposition = [0.0, 0.0, 1.5]\ninner_sied = 2.0\n")

    with pytest.raises(LoadError):
        validate_track_file(path)


def test_non_positive_inner_side_is_rejected(tmp_path):
    path = tmp_path / "tiny.toml"
    path.write_text("[[gates]]\nposition = [0.0, 0.0, 1.5]\ninner_side = -1.0\n")

    with pytest.raises(LoadError):
        validate_track_file(path)
