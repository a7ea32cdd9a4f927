from dataclasses import dataclass, replace
from typing import Optional

from ..common import Mode
from ..evalkit.config import EvalConfig
from ..ppo.config import PpoConfig
from ..quadsim.params import RandomizationSpec
from ..raceenv.config import EnvConfig, RewardConfig
from ..track.model import Track

ACYCLIC_GAMMA = 0.98


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, resolved from defaults, a config file, the environment and flags.

    ``track`` is the name of a shipped track or a path to a track file.
    ``quad_params`` and ``camera`` point to TOML files holding one record each, empty means built-in defaults.
    ``workers`` of 0 means one worker per logical core.
    """

    mode: Mode = Mode.PIXEL_ASYM
    track: str = "mini"
    quad_params: str = ""
    camera: str = ""
    seed: int = 0
    out: str = "runs/default"
    workers: int = 0
    log_level: str = "INFO"
    reward: RewardConfig = RewardConfig()
    randomization: RandomizationSpec = RandomizationSpec()
    env: EnvConfig = EnvConfig()
    ppo: PpoConfig = PpoConfig()
    eval: EvalConfig = EvalConfig()

    def env_config(self) -> EnvConfig:
        return replace(self.env, mode=self.mode)

    def ppo_config(self, track: Optional[Track] = None) -> PpoConfig:
        """Acyclic tracks train with a shorter horizon unless gamma was changed from its default"""
        if track is not None and not track.cyclic and self.ppo.gamma == PpoConfig.gamma:
            return replace(self.ppo, gamma=ACYCLIC_GAMMA)
        return self.ppo
