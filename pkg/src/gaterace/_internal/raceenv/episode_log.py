import csv
from pathlib import Path
from typing import List, Sequence, Union

from .env import StepResult
from .reward import COMPONENTS

COLUMNS = (
    "t",
    "p_x", "p_y", "p_z",
    "q_w", "q_x", "q_y", "q_z",
    "v_x", "v_y", "v_z",
    "omega_x", "omega_y", "omega_z",
    "a_c", "a_wx", "a_wy", "a_wz",
    *COMPONENTS,
    "events",
)


def _events(result: StepResult) -> str:
    events = []
    if result.gate_pass is not None:
        events.append(f"pass:{result.gate_pass.offset:.6f}")
    if result.done_reason is not None:
        events.append(result.done_reason.value)
    return ";".join(events)


class EpisodeLog:
    """Rows of one episode, the action column holds the action that led to the row's state"""

    def __init__(self):
        self.rows: List[tuple] = []

    def record(self, result: StepResult, action: Sequence[float]) -> None:
        state = result.state
        if state is None:
            return
        self.rows.append(
            (
                result.t,
                *state.p_WB.tolist(),
                *state.q_WB.tolist(),
                *state.v_W.tolist(),
                *state.omega_B.tolist(),
                *(float(a) for a in action),
                *result.reward_breakdown.as_tuple(),
                _events(result),
            ),
        )

    def write_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as stream:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(COLUMNS)
            writer.writerows(self.rows)
        return path
