import csv
import logging
import math
import os
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config.loading import (
    SNAPSHOT_FILE,
    dump_run_config,
    load_camera,
    load_quad_params,
    resolve_run_config,
    write_snapshot,
)
from ..config.schema import RunConfig
from ..errors import InvalidArgumentError, TrackValidationError
from ..evalkit.evaluate import evaluate
from ..evalkit.policies import NetworkPolicy, Policy, ReplayPolicy
from ..evalkit.report import format_summary, format_sweep, write_report_csv, write_sweep_csv
from ..evalkit.sweep import sensitivity_sweep
from ..gatecam.bench import MIN_ITERATIONS, benchmark_scene, mask_render_benchmark
from ..gatecam.pgm import write_pgm
from ..gatecam.render import body_pose, render_gate_mask
from ..ppo.trainer import train
from ..quadsim.bench import dynamics_benchmark
from ..quadsim.state import quaternion_from_euler, quaternion_to_rotation
from ..raceenv.env import RaceEnv
from ..track.io import load_track, shipped_track_names, validate_track_file
from ..track.model import Track
from ..track.randomization import AXES
from ..utils import add_note

ACTION_COLUMNS = ("a_c", "a_wx", "a_wy", "a_wz")
POSE_COLUMNS = ("p_x", "p_y", "p_z", "q_w", "q_x", "q_y", "q_z")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def echo(text: str = "") -> None:
    print(text, flush=True)  # noqa: T201


def setup_logging(level: str) -> None:
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, force=True)


def prepare(config_path: Optional[Path], overrides: Dict[str, Any], show_config: bool = True) -> RunConfig:
    """Resolves the run config, configures logging and prints the resolved config"""
    config = resolve_run_config(config_path, overrides=overrides)
    setup_logging(config.log_level)
    if show_config:
        echo(dump_run_config(config))
    return config


def worker_count(config: RunConfig) -> int:
    return config.workers if config.workers > 0 else (os.cpu_count() or 1)


def read_csv_columns(path: Path, columns: Sequence[str], argument: str) -> np.ndarray:
    with path.open(newline="") as stream:
        reader = csv.DictReader(stream)
        missing = [column for column in columns if column not in (reader.fieldnames or ())]
        if missing:
            raise InvalidArgumentError(argument, f"{path} lacks columns {', '.join(missing)}")
        try:
            rows = [[float(row[column]) for column in columns] for row in reader]
        except (TypeError, ValueError) as exc:
            raise InvalidArgumentError(argument, f"{path} line {reader.line_num}: {exc}") from None
    return np.array(rows, dtype=np.float64).reshape(-1, len(columns))


def _make_policy(config: RunConfig, checkpoint: Optional[Path], replay: Optional[Path]) -> Policy:
    if replay is not None:
        actions = read_csv_columns(replay, ACTION_COLUMNS, "--replay")
        if not len(actions):
            raise InvalidArgumentError("--replay", f"{replay} has no actions")
        return ReplayPolicy(actions)
    if checkpoint is None:
        raise InvalidArgumentError("--checkpoint", "either --checkpoint or --replay is required")
    return NetworkPolicy.from_checkpoint(checkpoint, config.mode)


def _evaluate_kwargs(config: RunConfig) -> Dict[str, Any]:
    return {
        "n_envs": config.eval.n_envs,
        "steps": config.eval.steps,
        "laps": config.eval.laps,
        "start_jitter": config.eval.start_jitter,
        "quad_params": load_quad_params(config.quad_params),
        "camera": load_camera(config.camera),
        "corruption_frac": config.env.corruption_frac,
        "workers": worker_count(config),
    }


def cmd_train(config_path: Optional[Path], overrides: Dict[str, Any], resume: Optional[Path] = None) -> int:
    if resume is not None:
        overrides = {**overrides, "out": str(resume)}
        if config_path is None and (resume / SNAPSHOT_FILE).exists():
            config_path = resume / SNAPSHOT_FILE
    config = prepare(config_path, overrides)
    track = load_track(config.track)
    out_dir = Path(config.out)
    if resume is None:
        write_snapshot(config, out_dir)

    env_factory: Callable[[np.random.Generator], RaceEnv] = partial(
        RaceEnv,
        track,
        config=config.env_config(),
        reward_config=config.reward,
        randomization=config.randomization,
        quad_params=load_quad_params(config.quad_params),
        camera=load_camera(config.camera),
    )
    result = train(
        env_factory,
        config.ppo_config(track),
        config.mode,
        config.seed,
        out_dir,
        workers=worker_count(config),
        resume=resume is not None,
    )
    echo(f"trained {result.updates} updates, {result.env_steps} env steps; curve at {result.curve_path}")
    if result.last_checkpoint is not None:
        echo(f"last checkpoint: {result.last_checkpoint}")
    return 0


def cmd_eval(
    config_path: Optional[Path],
    overrides: Dict[str, Any],
    checkpoint: Optional[Path] = None,
    replay: Optional[Path] = None,
    csv_path: Optional[Path] = None,
    episode_log: Optional[Path] = None,
) -> int:
    config = prepare(config_path, overrides)
    track = load_track(config.track)
    policy = _make_policy(config, checkpoint, replay)
    report = evaluate(
        policy,
        track,
        seed=config.seed,
        mode=config.mode,
        record_episode=episode_log is not None,
        **_evaluate_kwargs(config),
    )
    echo(format_summary(report, track.name))
    path = write_report_csv(report, csv_path if csv_path is not None else Path(config.out) / "eval.csv")
    echo(f"rollouts written to {path}")
    if episode_log is not None and report.episode_log is not None:
        echo(f"episode log written to {report.episode_log.write_csv(episode_log)}")
    return 0


def cmd_sweep(
    config_path: Optional[Path],
    overrides: Dict[str, Any],
    checkpoint: Optional[Path] = None,
    replay: Optional[Path] = None,
    csv_path: Optional[Path] = None,
    axes: Sequence[str] = AXES,
) -> int:
    config = prepare(config_path, overrides)
    track = load_track(config.track)
    policy = _make_policy(config, checkpoint, replay)
    rows = sensitivity_sweep(
        policy,
        track,
        magnitudes=config.eval.magnitudes,
        seed=config.seed,
        axes=axes,
        mode=config.mode,
        **_evaluate_kwargs(config),
    )
    echo(format_sweep(rows))
    path = write_sweep_csv(rows, csv_path if csv_path is not None else Path(config.out) / "sweep.csv")
    echo(f"sweep written to {path}")
    return 0


def _poses(
    track: Track,
    position: Optional[Sequence[float]],
    rpy: Optional[Sequence[float]],
    trajectory: Optional[Path],
) -> List[Tuple[np.ndarray, np.ndarray]]:
    if trajectory is not None:
        rows = read_csv_columns(trajectory, POSE_COLUMNS, "--trajectory")
        return [(row[:3], quaternion_to_rotation(row[3:] / np.linalg.norm(row[3:]))) for row in rows]

    start, yaw = track.start_pose()
    p_WB = np.array(position if position is not None else start, dtype=np.float64)  # noqa: N806
    roll, pitch, yaw_deg = rpy if rpy is not None else (0.0, 0.0, yaw)
    q_WB = quaternion_from_euler(math.radians(roll), math.radians(pitch), math.radians(yaw_deg))  # noqa: N806
    return [(p_WB, quaternion_to_rotation(q_WB))]


def cmd_render_obs(
    config_path: Optional[Path],
    overrides: Dict[str, Any],
    position: Optional[Sequence[float]] = None,
    rpy: Optional[Sequence[float]] = None,
    trajectory: Optional[Path] = None,
    corruption: Optional[float] = None,
    output: Optional[Path] = None,
) -> int:
    config = prepare(config_path, overrides)
    track = load_track(config.track)
    camera = load_camera(config.camera)
    extrinsics = camera.mount.extrinsics()
    corruption_frac = config.env.corruption_frac if corruption is None else corruption
    rng = np.random.default_rng(config.seed)

    poses = _poses(track, position, rpy, trajectory)
    if trajectory is None:
        target = output if output is not None else Path(config.out) / "obs.pgm"
        targets = [target]
    else:
        directory = output if output is not None else Path(config.out) / "obs"
        targets = [directory / f"mask-{k:05d}.pgm" for k in range(len(poses))]

    for (p_WB, R_WB), target in zip(poses, targets):  # noqa: N806
        mask = render_gate_mask(
            track.gates, body_pose(p_WB, R_WB), extrinsics, camera.intrinsics, corruption_frac, rng,
        )
        write_pgm(target, mask)
    echo(f"wrote {len(targets)} mask image(s), first at {targets[0]}" if targets else "trajectory has no rows")
    return 0


def cmd_bench(
    config_path: Optional[Path],
    overrides: Dict[str, Any],
    gates: Sequence[int] = (0, 1, 2, 4, 7, 8),
    iterations: int = 1000,
    dynamics_steps: int = 100_000,
) -> int:
    config = prepare(config_path, overrides)
    if iterations < MIN_ITERATIONS:
        raise InvalidArgumentError("--iterations", f"must be at least {MIN_ITERATIONS}, got {iterations}")
    for n_gates in gates:
        echo(mask_render_benchmark(benchmark_scene(n_gates), iterations, config.seed).summary())
    echo(dynamics_benchmark(dynamics_steps).summary())
    return 0


def cmd_tracks_list() -> int:
    for name in shipped_track_names():
        track = load_track(name)
        echo(f"{name:<10} {track.n_G:>3} gates  {'cyclic' if track.cyclic else 'acyclic'}")
    return 0


def cmd_tracks_validate(files: Sequence[Path]) -> int:
    failed = False
    for path in files:
        try:
            track = validate_track_file(path)
        except TrackValidationError as exc:
            failed = True
            echo(f"{path}: {len(exc.exceptions)} problem(s)")
            for problem in exc.exceptions:
                where = "track" if problem.gate_index is None else f"gate {problem.gate_index}"
                echo(f"  {where}: {problem.msg}")
        except Exception as exc:
            add_note(exc, f"while validating {path}")
            raise
        else:
            echo(f"{path}: ok, {track.n_G} gates, {'cyclic' if track.cyclic else 'acyclic'}")
    return 2 if failed else 0
