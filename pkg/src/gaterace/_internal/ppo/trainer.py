import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Union

import numpy as np

from ..common import Mode
from ..errors import ContractViolationError
from ..neural.checkpoint import save_params
from ..neural.network import NetworkSpec, init_params, parameter_layout
from ..neural.params import ParameterSet
from ..raceenv.env import RaceEnv
from ..raceenv.vector import VectorEnv
from .config import PpoConfig
from .optim import Adam
from .rollout import RolloutCollector, summarize
from .schedule import LinearSchedule
from .update import UpdateStats, ppo_update

logger = logging.getLogger(__name__)

CURVE_COLUMNS = (
    "env_steps",
    "mean_ep_reward",
    "mean_ep_len",
    "sr_rolling",
    "policy_loss",
    "value_loss",
    "entropy",
    "clip_frac",
    "kl",
    "lr",
)
CURVE_FILE = "curve.csv"
TRAIN_STATE_FILE = "train_state.npz"


def checkpoint_name(env_steps: int) -> str:
    return f"ckpt-{env_steps:012d}.bin"


@dataclass(frozen=True)
class TrainResult:
    out_dir: Path
    curve_path: Path
    checkpoints: List[Path]
    params: ParameterSet
    env_steps: int
    updates: int

    @property
    def last_checkpoint(self) -> Optional[Path]:
        return self.checkpoints[-1] if self.checkpoints else None


@dataclass
class _TrainState:
    params: ParameterSet
    optimizer: Adam
    env_steps: int = 0
    updates: int = 0

    def save(self, path: Path) -> None:
        np.savez(
            path,
            params=self.params.flat,
            env_steps=np.int64(self.env_steps),
            updates=np.int64(self.updates),
            **self.optimizer.state_dict(),
        )

    @classmethod
    def load(cls, path: Path, spec: NetworkSpec) -> "_TrainState":
        layout = parameter_layout(spec)
        with np.load(path) as data:
            flat = np.array(data["params"], dtype=np.float32)
            if flat.shape != (layout.size,):
                raise ContractViolationError(f"{path} holds {flat.size} parameters, the network needs {layout.size}")
            optimizer = Adam(layout.size)
            optimizer.load_state_dict(data)
            return cls(
                params=ParameterSet(layout, flat),
                optimizer=optimizer,
                env_steps=int(data["env_steps"]),
                updates=int(data["updates"]),
            )


def _format(value: float) -> str:
    return f"{value:.10g}"


def _curve_row(env_steps: int, collector: RolloutCollector, stats: UpdateStats, lr: float) -> List[str]:
    summary = collector.summary()
    return [
        str(env_steps),
        _format(summary.mean_reward),
        _format(summary.mean_length),
        _format(summary.success_rate),
        _format(stats.policy_loss),
        _format(stats.value_loss),
        _format(stats.entropy),
        _format(stats.clip_frac),
        _format(stats.approx_kl),
        _format(lr),
    ]


def train(
    env_factory: Callable[[np.random.Generator], RaceEnv],
    config: PpoConfig,
    mode: Mode,
    seed: int,
    out_dir: Union[str, Path],
    *,
    spec: Optional[NetworkSpec] = None,
    workers: int = 1,
    resume: bool = False,
) -> TrainResult:
    """Runs PPO until ``config.total_steps`` environment steps have been collected.

    Writes ``curve.csv``, checkpoints and ``train_state.npz`` into ``out_dir``.
    All randomness derives from ``seed`` and the number of completed updates,
    so a run is reproducible whatever the worker count.
    """
    spec = NetworkSpec(mode=mode) if spec is None else spec
    if spec.mode is not mode:
        raise ContractViolationError(f"network spec is for mode {spec.mode.value}, training requested {mode.value}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    curve_path = out_dir / CURVE_FILE
    state_path = out_dir / TRAIN_STATE_FILE

    if resume:
        state = _TrainState.load(state_path, spec)
        logger.info("Resuming from %s at %d env steps (%d updates)", state_path, state.env_steps, state.updates)
    else:
        state = None

    streams = [
        np.random.default_rng(child)
        for child in np.random.SeedSequence([seed, 0 if state is None else state.updates]).spawn(config.n_envs + 3)
    ]
    init_rng, policy_rng, shuffle_rng = streams[config.n_envs:]
    if state is None:
        state = _TrainState(params=init_params(spec, init_rng), optimizer=Adam(parameter_layout(spec).size))

    schedule = LinearSchedule(config.lr_start, config.lr_end, config.total_steps)
    envs = VectorEnv([env_factory(rng) for rng in streams[:config.n_envs]], workers)
    checkpoints: List[Path] = []

    def write_checkpoint() -> None:
        checkpoints.append(save_params(state.params, spec, out_dir / checkpoint_name(state.env_steps)))
        state.save(state_path)

    append = resume and curve_path.exists()
    with curve_path.open("a" if append else "w", newline="") as stream, envs:
        writer = csv.writer(stream, lineterminator="\n")
        if not append:
            writer.writerow(CURVE_COLUMNS)
        if state.env_steps >= config.total_steps:
            logger.info("Step budget %d already reached, nothing to train", config.total_steps)
            return TrainResult(out_dir, curve_path, checkpoints, state.params, state.env_steps, state.updates)

        collector = RolloutCollector(envs, spec, policy_rng)
        while state.env_steps < config.total_steps:
            lr = schedule(state.env_steps)
            batch = collector.collect(state.params, config.rollout_steps, config.gamma, config.gae_lambda)
            state.params, stats = ppo_update(
                state.params, spec, batch, config, state.optimizer, lr, shuffle_rng, state.env_steps,
            )
            state.env_steps += len(batch)
            state.updates += 1

            writer.writerow(_curve_row(state.env_steps, collector, stats, lr))
            stream.flush()
            summary = collector.summary()
            logger.info(
                "update %d, %d env steps: mean episode reward %.3f (len %.1f, sr %.2f), "
                "policy loss %.4f, value loss %.4f, entropy %.3f, clip %.3f, kl %.5f, lr %.2e",
                state.updates, state.env_steps, summary.mean_reward, summary.mean_length, summary.success_rate,
                stats.policy_loss, stats.value_loss, stats.entropy, stats.clip_frac, stats.approx_kl, lr,
            )
            logger.debug("Recent episode endings: %s", summarize(collector.episodes))
            if config.checkpoint_every and state.updates % config.checkpoint_every == 0:
                write_checkpoint()

    if not checkpoints or checkpoints[-1].name != checkpoint_name(state.env_steps):
        write_checkpoint()
    return TrainResult(out_dir, curve_path, checkpoints, state.params, state.env_steps, state.updates)
