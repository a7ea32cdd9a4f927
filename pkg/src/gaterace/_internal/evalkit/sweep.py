import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Sequence, Union

import numpy as np

from ..common import Mode
from ..track.model import Track
from ..track.randomization import AXES, displace_gates
from .evaluate import evaluate
from .policies import NetworkPolicy, Policy

logger = logging.getLogger(__name__)

SIGNS = (1, -1)


@dataclass(frozen=True)
class SweepRow:
    axis: str
    sign: int
    magnitude: float
    sr: float
    mge: Optional[float]
    lt: Optional[float]

    @property
    def direction(self) -> str:
        return ("+" if self.sign > 0 else "-") + self.axis


def sensitivity_sweep(
    policy: Union[Policy, str, Path],
    track: Track,
    magnitudes: Sequence[float] = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5),
    seed: int = 0,
    *,
    axes: Sequence[str] = AXES,
    signs: Sequence[int] = SIGNS,
    mode: Optional[Mode] = None,
    **evaluate_kwargs: Any,
) -> List[SweepRow]:
    """Evaluates the policy on displaced copies of ``track``, one row per direction and magnitude.

    Every cell draws its displacement pattern from a fresh generator seeded with ``seed``,
    so the magnitudes of one direction scale the same per-gate pattern,
    and every evaluation uses ``seed`` as well.
    """
    if isinstance(policy, (str, Path)):
        policy = NetworkPolicy.from_checkpoint(policy, Mode.PIXEL_ASYM if mode is None else mode)

    rows = []
    for axis in axes:
        for sign in signs:
            for magnitude in magnitudes:
                displaced = displace_gates(track, axis, sign, magnitude, np.random.default_rng(seed))
                report = evaluate(policy, displaced, seed=seed, mode=mode, **evaluate_kwargs)
                row = SweepRow(axis, sign, float(magnitude), report.sr, report.mge, report.lt)
                logger.info("Sweep %s %.2f m: SR %.1f %%", row.direction, magnitude, report.sr)
                rows.append(row)
    return rows
