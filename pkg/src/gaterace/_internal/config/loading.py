import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, MutableMapping, Optional, Type, TypeVar, Union

import tomli_w

from ..compat import compat_tomllib
from ..errors import InvalidParametersError
from ..gatecam.camera import CameraConfig
from ..quadsim.params import QuadParams
from ..utils import add_note
from .retort import config_retort
from .schema import RunConfig

logger = logging.getLogger(__name__)

T = TypeVar("T")

ENV_PREFIX = "GATERACE_"
# environment variable suffix -> (config key, parser)
ENV_OVERRIDES: Mapping[str, tuple] = {
    "SEED": ("seed", int),
    "WORKERS": ("workers", int),
    "OUT": ("out", str),
    "LOG_LEVEL": ("log_level", str.upper),
}
SNAPSHOT_FILE = "config.toml"


def read_toml(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    with path.open("rb") as stream:
        return compat_tomllib.load(stream)


def load_record(path: Union[str, Path], tp: Type[T]) -> T:
    """Loads one config record from a TOML file, errors are annotated with the file name"""
    try:
        return config_retort.load(read_toml(path), tp)
    except Exception as exc:
        add_note(exc, f"while loading {tp.__name__} from {path}")
        raise


def load_quad_params(path: Union[str, Path, None]) -> QuadParams:
    return QuadParams() if not path else load_record(path, QuadParams)


def load_camera(path: Union[str, Path, None]) -> CameraConfig:
    return CameraConfig() if not path else load_record(path, CameraConfig)


def set_dotted(data: MutableMapping[str, Any], dotted_key: str, value: Any) -> None:
    *parents, leaf = dotted_key.split(".")
    for key in parents:
        data = data.setdefault(key, {})
    data[leaf] = value


def environment_layer(environ: Mapping[str, str]) -> Dict[str, Any]:
    layer: Dict[str, Any] = {}
    for suffix, (key, parse) in ENV_OVERRIDES.items():
        name = ENV_PREFIX + suffix
        raw = environ.get(name)
        if raw is None or raw == "":
            continue
        try:
            layer[key] = parse(raw)
        except ValueError:
            raise InvalidParametersError("environment", f"{name} has invalid value {raw!r}") from None
    return layer


def resolve_run_config(
    config_path: Union[str, Path, None] = None,
    environ: Optional[Mapping[str, str]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """Defaults, then the config file, then ``GATERACE_*`` variables, then ``overrides`` keyed by dotted paths"""
    data: Dict[str, Any] = {} if config_path is None else read_toml(config_path)
    data.update(environment_layer(os.environ if environ is None else environ))
    for dotted_key, value in (overrides or {}).items():
        if value is not None:
            set_dotted(data, dotted_key, value)
    try:
        return config_retort.load(data, RunConfig)
    except Exception as exc:
        if config_path is not None:
            add_note(exc, f"while loading run config from {config_path}")
        raise


def _toml_ready(data: Any) -> Any:
    if isinstance(data, Mapping):
        return {key: _toml_ready(value) for key, value in data.items() if value is not None}
    if isinstance(data, (list, tuple)):
        return [_toml_ready(item) for item in data]
    return data


def dump_toml(data: Any) -> str:
    return tomli_w.dumps(_toml_ready(data))


def dump_run_config(config: RunConfig) -> str:
    return dump_toml(config_retort.dump(config))


def write_snapshot(config: RunConfig, out_dir: Union[str, Path], echo: Optional[Callable[[str], Any]] = None) -> Path:
    """Writes the resolved config next to the run outputs, feeding it back with ``--config`` reproduces the run"""
    text = dump_run_config(config)
    path = Path(out_dir) / SNAPSHOT_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info("Wrote config snapshot %s", path)
    if echo is not None:
        echo(text)
    return path
