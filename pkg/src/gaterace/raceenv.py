from gaterace._internal.raceenv.buffer import BufferEntry, InitialStateBuffer, seed_entries
from gaterace._internal.raceenv.config import EnvConfig, RewardConfig
from gaterace._internal.raceenv.env import DoneReason, RaceEnv, StepResult
from gaterace._internal.raceenv.episode_log import EpisodeLog
from gaterace._internal.raceenv.observation import (
    ACTION_SIZE,
    FULL_STATE_SIZE,
    ActionHistory,
    ActorObservation,
    FullSimState,
    build_full_state,
)
from gaterace._internal.raceenv.reward import RewardBreakdown, camera_gate_angle, reward
from gaterace._internal.raceenv.vector import (
    ObservationBatch,
    VectorEnv,
    next_observations,
    spawn_generators,
    stack_observations,
)

__all__ = (
    "RaceEnv",
    "VectorEnv",
    "StepResult",
    "DoneReason",
    "EnvConfig",
    "RewardConfig",
    "RewardBreakdown",
    "ActorObservation",
    "FullSimState",
    "ActionHistory",
    "InitialStateBuffer",
    "BufferEntry",
    "EpisodeLog",
    "ObservationBatch",
    "reward",
    "camera_gate_angle",
    "build_full_state",
    "seed_entries",
    "stack_observations",
    "next_observations",
    "spawn_generators",
    "ACTION_SIZE",
    "FULL_STATE_SIZE",
)
