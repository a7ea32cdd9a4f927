import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from ..errors import ContractViolationError
from ..gatecam.camera import CameraConfig
from ..gatecam.render import GateMask, body_pose, render_gate_mask
from ..quadsim.dynamics import step as quad_step
from ..quadsim.params import QuadParams, RandomizationSpec
from ..quadsim.randomization import randomize
from ..quadsim.state import QuadState, denormalize_action, quaternion_from_euler, quaternion_multiply
from ..track.events import GatePass, find_gate_collision
from ..track.model import Track
from ..track.progress import ProgressTracker
from ..track.randomization import randomize_gates
from .buffer import BufferEntry, InitialStateBuffer
from .config import EnvConfig, RewardConfig
from .observation import ACTION_SIZE, ActionHistory, ActorObservation, FullSimState, build_full_state
from .reward import RewardBreakdown, camera_gate_angle, reward

logger = logging.getLogger(__name__)


class DoneReason(Enum):
    CRASH_GROUND = "crash_ground"
    CRASH_GATE = "crash_gate"
    TIMEOUT = "timeout"
    FINISHED_ACYCLIC = "finished_acyclic"


@dataclass(frozen=True, eq=False)
class StepResult:
    actor_obs: ActorObservation
    full_state: FullSimState
    reward: float
    reward_breakdown: RewardBreakdown
    done: bool = False
    done_reason: Optional[DoneReason] = None
    state: Optional[QuadState] = None
    gates_passed: int = 0
    gate_pass: Optional[GatePass] = None
    t: float = 0.0
    reset_result: Optional["StepResult"] = None

    @property
    def truncated(self) -> bool:
        return self.done_reason is DoneReason.TIMEOUT


class RaceEnv:
    """One racing episode at a time on a track.

    The environment owns its random stream and its initial-state buffer.
    Dynamics integrate randomized parameters while the rate controller keeps the nominal ones.
    """

    def __init__(
        self,
        track: Track,
        rng: np.random.Generator,
        *,
        config: EnvConfig = EnvConfig(),
        reward_config: RewardConfig = RewardConfig(),
        randomization: RandomizationSpec = RandomizationSpec(),
        quad_params: QuadParams = QuadParams(),
        camera: CameraConfig = CameraConfig(),
        buffer: Optional[InitialStateBuffer] = None,
    ):
        self.track = track
        self.rng = rng
        self.config = config
        self.reward_config = reward_config
        self.randomization = randomization
        self.nominal_params = quad_params
        self.camera = camera
        self._extrinsics = camera.mount.extrinsics()
        self.buffer = buffer if buffer is not None else InitialStateBuffer(
            track, quad_params, config.buffer_capacity, config.seed_speed,
        )
        self._history = ActionHistory(config.history_length)
        self._episode_track = track
        self._params = quad_params
        self._progress = ProgressTracker(track, smoothing=config.smoothing)
        self._state: Optional[QuadState] = None
        self._steps = 0
        self._done = True

    @property
    def state(self) -> QuadState:
        if self._state is None:
            raise ContractViolationError("environment has not been reset")
        return self._state

    @property
    def episode_track(self) -> Track:
        return self._episode_track

    @property
    def params(self) -> QuadParams:
        return self._params

    @property
    def done(self) -> bool:
        return self._done

    @property
    def steps(self) -> int:
        return self._steps

    def reset(self, start: Optional[BufferEntry] = None) -> StepResult:
        """Starts an episode from ``start`` or from a perturbed buffer sample.

        An explicit start is used as is, only dynamics and gates are re-randomized.
        """
        if start is None:
            entry = self.buffer.sample(self.rng)
            state = self._perturb(entry.state)
        else:
            entry = start
            state = start.state

        self._params = randomize(self.nominal_params, self.randomization, self.rng)
        self._episode_track = randomize_gates(self.track, self.randomization.gate_cm, self.rng)
        self._progress = ProgressTracker(self._episode_track, i=entry.i, smoothing=self.config.smoothing)
        self._history.clear()
        self._state = state
        self._steps = 0
        self._done = False
        logger.debug("Reset at gate %d, p=%s", self._progress.target_index, state.p_WB.tolist())
        return StepResult(
            actor_obs=self._actor_observation(),
            full_state=self._full_state(),
            reward=0.0,
            reward_breakdown=RewardBreakdown(),
            state=state,
            gates_passed=entry.i,
        )

    def _perturb(self, state: QuadState) -> QuadState:
        spec = self.randomization
        position = state.p_WB + self.rng.uniform(
            [-spec.pos_xy, -spec.pos_xy, -spec.pos_z], [spec.pos_xy, spec.pos_xy, spec.pos_z],
        )
        roll, pitch, yaw = np.radians(self.rng.uniform(-spec.att_deg, spec.att_deg, size=3))
        attitude = quaternion_multiply(state.q_WB, quaternion_from_euler(roll, pitch, yaw))
        velocity = state.v_W + self.rng.uniform(-spec.vel, spec.vel, size=3)
        rates = state.omega_B + np.radians(self.rng.uniform(-spec.rate_dps, spec.rate_dps, size=3))
        return QuadState(np.concatenate([position, attitude, velocity, rates, state.Omega]))

    def step(self, action: Sequence[float]) -> StepResult:
        if self._done:
            raise ContractViolationError("step called on a finished episode, reset first")

        normalized = np.clip(np.asarray(action, dtype=np.float64).reshape(ACTION_SIZE), -1.0, 1.0)
        prev_action = self._history.latest
        prev_state = self.state
        command = denormalize_action(normalized, self.nominal_params)
        state = quad_step(
            prev_state, command, self._params, self.config.dt,
            substeps=self.config.substeps, controller_params=self.nominal_params,
        )
        self._state = state
        self._steps += 1
        self._history.push(normalized)

        target = self._episode_track.gates[self._progress.target_index]
        prev_d = float(np.linalg.norm(target.center - prev_state.p_WB))
        curr_d = float(np.linalg.norm(target.center - state.p_WB))

        gate_pass = self._progress.advance(prev_state.p_WB, state.p_WB)
        finished = self._progress.finished
        if (
            gate_pass is not None
            and self.config.buffer_insertion
            and not finished
            and gate_pass.has_margin(target, self.config.drone_radius)
        ):
            self.buffer.insert(BufferEntry(state, self._progress.i))

        done_reason = None
        if state.p_WB[2] < 0:
            done_reason = DoneReason.CRASH_GROUND
        elif find_gate_collision(prev_state.p_WB, state.p_WB, self.config.drone_radius, self._episode_track) is not None:
            done_reason = DoneReason.CRASH_GATE
        elif finished:
            done_reason = DoneReason.FINISHED_ACYCLIC
        elif self._steps >= self.config.episode_steps:
            done_reason = DoneReason.TIMEOUT

        optical_axis = state.R_WB @ self._extrinsics.optical_axis_B
        next_gate = self._episode_track.gates[self._progress.target_index]
        breakdown = reward(
            prev_d=prev_d,
            curr_d=curr_d,
            delta_cam=camera_gate_angle(optical_axis, next_gate.center - state.p_WB),
            action=normalized,
            prev_action=prev_action,
            pass_offset=None if gate_pass is None else gate_pass.offset,
            crash=done_reason in (DoneReason.CRASH_GROUND, DoneReason.CRASH_GATE),
            cfg=self.reward_config,
            terminal=done_reason is DoneReason.FINISHED_ACYCLIC,
        )

        self._done = done_reason is not None
        return StepResult(
            actor_obs=self._actor_observation(),
            full_state=self._full_state(),
            reward=breakdown.total,
            reward_breakdown=breakdown,
            done=self._done,
            done_reason=done_reason,
            state=state,
            gates_passed=self._progress.i,
            gate_pass=gate_pass,
            t=self._steps * self.config.dt,
        )

    def _full_state(self) -> FullSimState:
        state = self.state
        progress = self._progress.state_at(state.p_WB)
        return build_full_state(state, progress.i, progress.d_vec, self.track.n_G, self.config.smoothing)

    def _actor_observation(self) -> ActorObservation:
        mask: Optional[GateMask] = None
        if self.config.mode.uses_pixels:
            state = self.state
            mask = render_gate_mask(
                self._episode_track.gates,
                body_pose(state.p_WB, state.R_WB),
                self._extrinsics,
                self.camera.intrinsics,
                self.config.corruption_frac,
                self.rng,
            )
        return ActorObservation(mask=mask, action_history=self._history.snapshot())
