from dataclasses import replace
from importlib import resources
from pathlib import Path
from typing import List, Union

from ..config.loading import dump_toml, read_toml
from ..config.retort import config_retort
from ..errors import UnknownTrackError
from ..utils import add_note
from .model import Track

TRACK_PACKAGE = "gaterace.tracks"
TRACK_SUFFIX = ".toml"


def shipped_track_names() -> List[str]:
    return sorted(
        entry.name[:-len(TRACK_SUFFIX)]
        for entry in resources.files(TRACK_PACKAGE).iterdir()
        if entry.name.endswith(TRACK_SUFFIX)
    )


def _load_file(path: Path) -> Track:
    try:
        track = config_retort.load(read_toml(path), Track)
    except Exception as exc:
        add_note(exc, f"while loading track file {path}")
        raise
    if not track.name:
        track = replace(track, name=path.stem)
    return track


def load_track(name_or_path: Union[str, Path]) -> Track:
    """Loads a shipped track by name or any track file by path"""
    path = Path(name_or_path)
    if path.suffix == TRACK_SUFFIX or path.exists():
        return _load_file(path)

    resource = resources.files(TRACK_PACKAGE) / f"{name_or_path}{TRACK_SUFFIX}"
    if not resource.is_file():
        raise UnknownTrackError(name=str(name_or_path), available=shipped_track_names())
    with resources.as_file(resource) as shipped:
        return _load_file(shipped)


def validate_track_file(path: Union[str, Path]) -> Track:
    """Loads a track file, every problem of every gate is reported at once as one exception group"""
    return _load_file(Path(path))


def dump_track(track: Track, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_toml(config_retort.dump(track)))
    return path
