from ._internal.common import Mode
from ._internal.config.loading import resolve_run_config
from ._internal.config.schema import RunConfig
from ._internal.evalkit.evaluate import evaluate
from ._internal.evalkit.sweep import sensitivity_sweep
from ._internal.ppo.trainer import train
from ._internal.raceenv.env import RaceEnv
from ._internal.track.io import load_track
from ._internal.track.model import Gate, Track

__all__ = (
    "Mode",
    "RunConfig",
    "resolve_run_config",
    "Gate",
    "Track",
    "load_track",
    "RaceEnv",
    "train",
    "evaluate",
    "sensitivity_sweep",
)
