import logging
import math
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from ..common import Mode
from ..gatecam.camera import CameraConfig
from ..quadsim.params import QuadParams, RandomizationSpec
from ..quadsim.state import QuadState, quaternion_from_euler
from ..raceenv.buffer import BufferEntry
from ..raceenv.config import EnvConfig, RewardConfig
from ..raceenv.env import DoneReason, RaceEnv
from ..raceenv.episode_log import EpisodeLog
from ..raceenv.vector import VectorEnv, spawn_generators
from ..track.model import Track
from .metrics import EvalReport, RolloutRecord, build_report
from .policies import NetworkPolicy, Policy
from .trajectory import RolloutScorer

logger = logging.getLogger(__name__)

_OUTCOME_BY_REASON = {
    DoneReason.CRASH_GROUND: "crash_ground",
    DoneReason.CRASH_GATE: "crash_gate",
    DoneReason.TIMEOUT: "timeout",
    DoneReason.FINISHED_ACYCLIC: "success",
}


def jittered_start(track: Track, params: QuadParams, rng: np.random.Generator, jitter: float) -> BufferEntry:
    position, yaw = track.start_pose()
    position = position + rng.uniform(-jitter, jitter, size=3)
    attitude = quaternion_from_euler(0.0, 0.0, math.radians(yaw))
    return BufferEntry(QuadState.hover(params, p_WB=position, q_WB=attitude), 0)


def _policy_mode(policy: Policy, mode: Optional[Mode]) -> Mode:
    spec = getattr(policy, "spec", None)
    if spec is not None:
        return spec.mode
    return Mode.STATE if mode is None else mode


def evaluate(
    policy: Union[Policy, str, Path],
    track: Track,
    n_envs: int = 64,
    steps: int = 1000,
    laps: int = 3,
    seed: int = 0,
    *,
    mode: Optional[Mode] = None,
    start_jitter: float = 0.1,
    quad_params: QuadParams = QuadParams(),
    camera: CameraConfig = CameraConfig(),
    corruption_frac: float = 0.10,
    record_episode: bool = False,
    workers: int = 1,
) -> EvalReport:
    """Deterministic rollouts from slightly perturbed start positions.

    ``policy`` may be a checkpoint path, it is then loaded for ``mode`` (pixel-asym by default).
    A rollout succeeds once it has passed ``laps`` full laps (one pass of an acyclic track)
    without crashing within ``steps`` control steps.
    Dynamics and gates are not randomized, the observation corruption stays on.
    Environments are stepped on ``workers`` threads, the report does not depend on it.
    """
    if isinstance(policy, (str, Path)):
        policy = NetworkPolicy.from_checkpoint(policy, Mode.PIXEL_ASYM if mode is None else mode)
    env_mode = _policy_mode(policy, mode)
    config = EnvConfig(
        mode=env_mode, episode_steps=steps, corruption_frac=corruption_frac, buffer_insertion=False,
    )

    envs: List[RaceEnv] = []
    results = []
    for rng in spawn_generators(seed, n_envs):
        env = RaceEnv(
            track,
            rng,
            config=config,
            reward_config=RewardConfig(),
            randomization=RandomizationSpec.disabled(),
            quad_params=quad_params,
            camera=camera,
        )
        results.append(env.reset(start=jittered_start(track, quad_params, rng, start_jitter)))
        envs.append(env)

    scorers = [RolloutScorer(track, laps) for _ in envs]
    records: List[Optional[RolloutRecord]] = [None] * n_envs
    episode_log = EpisodeLog() if record_episode else None
    active = list(range(n_envs))
    with VectorEnv(envs, workers) as vector:
        for step in range(steps):
            if not active:
                break
            actions = policy.act(step, [results[idx] for idx in active])
            still_active = []
            for idx, action, result in zip(active, actions, vector.step_some(active, actions)):
                results[idx] = result
                if episode_log is not None and idx == 0:
                    episode_log.record(result, action)

                scorer = scorers[idx]
                if result.gate_pass is not None:
                    scorer.record_pass(result.t - config.dt * (1.0 - result.gate_pass.fraction), result.gate_pass)

                outcome = None
                if result.done_reason in (DoneReason.CRASH_GROUND, DoneReason.CRASH_GATE):
                    outcome = _OUTCOME_BY_REASON[result.done_reason]
                elif scorer.complete:
                    outcome = "success"
                elif result.done_reason is not None:
                    outcome = _OUTCOME_BY_REASON[result.done_reason]

                if outcome is None:
                    still_active.append(idx)
                else:
                    records[idx] = scorer.finish(idx, outcome, result.t)
            active = still_active

    for idx in active:
        records[idx] = scorers[idx].finish(idx, "timeout", steps * config.dt)

    report = build_report([record for record in records if record is not None], episode_log)
    logger.info(
        "Evaluated %d rollouts on %r: SR %.1f %%, MGE %s, LT %s",
        n_envs, track.name, report.sr,
        "-" if report.mge is None else f"{report.mge:.3f} m",
        "-" if report.lt is None else f"{report.lt:.2f} s",
    )
    return report
