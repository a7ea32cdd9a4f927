"""The one retort every config file goes through.

Unknown keys are rejected, scalars are not coerced and load errors carry the path of the offending key.
Checks local to one field live here as validators, invariants spanning fields stay in ``__post_init__``.
"""
from adaptix import DebugTrail, ExtraForbid, P, Retort, name_mapping, validator

from ..evalkit.config import EvalConfig
from ..gatecam.camera import CameraConfig, CameraIntrinsics, CameraMount
from ..ppo.config import PpoConfig
from ..quadsim.params import QuadParams, RandomizationSpec
from ..raceenv.config import EnvConfig, RewardConfig
from ..track.model import Gate, Track


def _positive(value) -> bool:
    return value > 0


def _nonnegative(value) -> bool:
    return value >= 0


def _unit_interval(value) -> bool:
    return 0 <= value <= 1


_POSITIVE = "must be positive"
_NONNEGATIVE = "must be >= 0"

config_retort = Retort(
    strict_coercion=True,
    debug_trail=DebugTrail.ALL,
    recipe=[
        # mode is set from the run config
        name_mapping(EnvConfig, skip=["mode"], extra_in=ExtraForbid()),
        name_mapping(extra_in=ExtraForbid()),
        validator(P[QuadParams].m, _positive, _POSITIVE),
        validator(P[QuadParams].arm_length, _positive, _POSITIVE),
        validator(P[QuadParams].k_mot, _positive, _POSITIVE),
        validator(P[QuadParams].c_max, _positive, _POSITIVE),
        validator(P[QuadParams].omega_max, _positive, _POSITIVE),
        validator(P[Gate].inner_side, _positive, _POSITIVE),
        validator(P[Gate].frame_width, _positive, _POSITIVE),
        validator(P[Gate].frame_depth, _positive, _POSITIVE),
        validator(P[CameraIntrinsics].alpha_cam, _unit_interval, "must lie in [0, 1]"),
        validator(P[CameraIntrinsics].fx, _positive, _POSITIVE),
        validator(P[CameraIntrinsics].fy, _positive, _POSITIVE),
        validator(P[RewardConfig].lambda1, _nonnegative, _NONNEGATIVE),
        validator(P[RewardConfig].lambda2, _nonnegative, _NONNEGATIVE),
        validator(P[RewardConfig].lambda3, _nonnegative, _NONNEGATIVE),
        validator(P[RewardConfig].lambda4, _nonnegative, _NONNEGATIVE),
        validator(P[RewardConfig].crash_penalty, _nonnegative, _NONNEGATIVE),
        validator(P[EnvConfig].corruption_frac, _unit_interval, "must lie in [0, 1]"),
        validator(P[PpoConfig].gamma, lambda value: 0 < value <= 1, "must lie in (0, 1]"),
        validator(P[PpoConfig].gae_lambda, _unit_interval, "must lie in [0, 1]"),
        validator(P[PpoConfig].total_steps, _nonnegative, _NONNEGATIVE),
        validator(P[EvalConfig].n_envs, _positive, _POSITIVE),
    ],
)
