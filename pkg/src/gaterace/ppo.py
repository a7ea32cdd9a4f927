from gaterace._internal.ppo.config import PpoConfig
from gaterace._internal.ppo.gae import compute_gae, normalize_advantages
from gaterace._internal.ppo.optim import Adam, clip_grad_norm
from gaterace._internal.ppo.rollout import EpisodeRecord, EpisodeSummary, RolloutCollector
from gaterace._internal.ppo.schedule import LinearSchedule
from gaterace._internal.ppo.trainer import (
    CURVE_COLUMNS,
    CURVE_FILE,
    TRAIN_STATE_FILE,
    TrainResult,
    checkpoint_name,
    train,
)
from gaterace._internal.ppo.update import RolloutBatch, UpdateStats, clipped_surrogate, ppo_update

__all__ = (
    "PpoConfig",
    "RolloutBatch",
    "UpdateStats",
    "TrainResult",
    "RolloutCollector",
    "EpisodeRecord",
    "EpisodeSummary",
    "LinearSchedule",
    "Adam",
    "compute_gae",
    "normalize_advantages",
    "clip_grad_norm",
    "clipped_surrogate",
    "ppo_update",
    "train",
    "checkpoint_name",
    "CURVE_COLUMNS",
    "CURVE_FILE",
    "TRAIN_STATE_FILE",
)
