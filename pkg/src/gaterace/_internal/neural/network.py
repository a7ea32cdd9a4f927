import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Optional, Protocol, Tuple

import numpy as np

from ..common import FloatArray, Mode, VarTuple
from ..errors import ContractViolationError, InvalidParametersError
from .layers import (
    ConvCache,
    conv2d_backward,
    conv2d_forward,
    conv_output_size,
    dense_backward,
    dense_forward,
    relu_backward,
    relu_forward,
)
from .params import PARAM_DTYPE, ParameterLayout, ParameterSet


@dataclass(frozen=True)
class ConvLayerSpec:
    filters: int
    kernel: int
    stride: int


ATARI_CONV_LAYERS = (
    ConvLayerSpec(filters=32, kernel=8, stride=4),
    ConvLayerSpec(filters=64, kernel=4, stride=2),
    ConvLayerSpec(filters=64, kernel=3, stride=1),
)


@dataclass(frozen=True)
class NetworkSpec:
    """Architecture of the actor-critic.

    Pixel modes run the mask through the convolution stack and a dense latent layer,
    the encoder output feeds both heads. State mode has no encoder at all.
    """

    mode: Mode = Mode.PIXEL_ASYM
    image_size: int = 84
    conv_layers: VarTuple[ConvLayerSpec] = ATARI_CONV_LAYERS
    latent_dim: int = 256
    hidden: VarTuple[int] = (512, 512)
    action_dim: int = 4
    history_dim: int = 12
    state_dim: int = 20
    log_std_init: float = math.log(0.5)

    def __post_init__(self):
        problems = []
        if self.action_dim < 1:
            problems.append("action_dim must be positive")
        if self.history_dim < 0 or self.state_dim < 0:
            problems.append("history_dim and state_dim must be >= 0")
        if any(width < 1 for width in self.hidden):
            problems.append("hidden widths must be positive")
        if self.mode.uses_pixels:
            if not self.conv_layers or self.latent_dim < 1:
                problems.append("pixel modes need convolution layers and a positive latent_dim")
            size = self.image_size
            for layer in self.conv_layers:
                size = conv_output_size(size, layer.kernel, layer.stride)
            if size < 1:
                problems.append(f"convolution stack does not fit a {self.image_size}px image")
        if problems:
            raise InvalidParametersError("NetworkSpec", "; ".join(problems))

    @property
    def conv_output_shape(self) -> Tuple[int, int, int]:
        size = self.image_size
        for layer in self.conv_layers:
            size = conv_output_size(size, layer.kernel, layer.stride)
        return self.conv_layers[-1].filters, size, size

    @property
    def flat_dim(self) -> int:
        return int(np.prod(self.conv_output_shape))

    @property
    def actor_input_dim(self) -> int:
        if self.mode.uses_pixels:
            return self.latent_dim + self.history_dim
        return self.state_dim + self.history_dim

    @property
    def critic_input_dim(self) -> int:
        if self.mode is Mode.PIXEL_ASYM:
            return self.latent_dim + self.history_dim + self.state_dim
        return self.actor_input_dim


class NetworkInput(Protocol):
    masks: Optional[FloatArray]
    history: FloatArray
    full_state: FloatArray


@dataclass(frozen=True, eq=False)
class NetworkOutput:
    mean: FloatArray
    log_std: FloatArray
    value: FloatArray
    latent: Optional[FloatArray]


@dataclass(frozen=True, eq=False)
class OutputGradients:
    """Loss gradients with respect to the network outputs, any of them may be omitted"""

    mean: Optional[FloatArray] = None
    log_std: Optional[FloatArray] = None
    value: Optional[FloatArray] = None


@dataclass(eq=False)
class _MlpTrace:
    inputs: List[FloatArray] = field(default_factory=list)
    activations: List[FloatArray] = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class ForwardCache:
    batch_size: int
    conv_caches: VarTuple[ConvCache]
    conv_activations: VarTuple[FloatArray]
    flat: Optional[FloatArray]
    latent: Optional[FloatArray]
    actor: _MlpTrace
    critic: _MlpTrace


def _layer_names(prefix: str, n_hidden: int) -> List[str]:
    return [f"{prefix}.{k}" for k in range(n_hidden)] + [f"{prefix}.out"]


def parameter_layout(spec: NetworkSpec) -> ParameterLayout:
    shapes: List[Tuple[str, VarTuple[int]]] = []
    if spec.mode.uses_pixels:
        channels = 1
        for k, layer in enumerate(spec.conv_layers):
            shapes.append((f"conv{k}.w", (layer.filters, channels, layer.kernel, layer.kernel)))
            shapes.append((f"conv{k}.b", (layer.filters,)))
            channels = layer.filters
        shapes.append(("latent.w", (spec.latent_dim, spec.flat_dim)))
        shapes.append(("latent.b", (spec.latent_dim,)))

    for prefix, in_dim, out_dim in (
        ("actor", spec.actor_input_dim, spec.action_dim),
        ("critic", spec.critic_input_dim, 1),
    ):
        widths = [in_dim, *spec.hidden, out_dim]
        for name, (fan_in, fan_out) in zip(_layer_names(prefix, len(spec.hidden)), zip(widths, widths[1:])):
            shapes.append((f"{name}.w", (fan_out, fan_in)))
            shapes.append((f"{name}.b", (fan_out,)))
        if prefix == "actor":
            shapes.append(("log_std", (spec.action_dim,)))
    return ParameterLayout(shapes)


def orthogonal(shape: VarTuple[int], gain: float, rng: np.random.Generator) -> FloatArray:
    rows = shape[0]
    cols = int(np.prod(shape[1:]))
    a = rng.standard_normal((max(rows, cols), min(rows, cols)))
    q, r = np.linalg.qr(a)
    q *= np.sign(np.diag(r))
    if rows < cols:
        q = q.T
    return gain * q[:rows, :cols].reshape(shape)


def _init_gain(name: str) -> float:
    if name.startswith("actor.out"):
        return 0.01
    if name.startswith("critic.out"):
        return 1.0
    return math.sqrt(2)


def init_params(spec: NetworkSpec, rng: np.random.Generator, dtype=PARAM_DTYPE) -> ParameterSet:
    """Orthogonal weights, zero biases, log-std at ``spec.log_std_init``"""
    layout = parameter_layout(spec)
    params = ParameterSet.zeros(layout, dtype)
    for entry in layout:
        if entry.name == "log_std":
            params[entry.name][...] = spec.log_std_init
        elif entry.name.endswith(".w"):
            params[entry.name][...] = orthogonal(entry.shape, _init_gain(entry.name), rng)
    return params


def _mlp_forward(params: ParameterSet, names: Iterable[str], x: FloatArray) -> Tuple[FloatArray, _MlpTrace]:
    names = list(names)
    trace = _MlpTrace()
    for k, name in enumerate(names):
        trace.inputs.append(x)
        x = dense_forward(x, params[f"{name}.w"], params[f"{name}.b"])
        if k < len(names) - 1:
            x = relu_forward(x)
            trace.activations.append(x)
    return x, trace


def _mlp_backward(
    params: ParameterSet,
    grads: ParameterSet,
    names: Iterable[str],
    dout: FloatArray,
    trace: _MlpTrace,
) -> FloatArray:
    names = list(names)
    dx = dout
    for k in reversed(range(len(names))):
        name = names[k]
        if k < len(names) - 1:
            dx = relu_backward(dx, trace.activations[k])
        dx, dweight, dbias = dense_backward(dx, trace.inputs[k], params[f"{name}.w"])
        grads[f"{name}.w"][...] += dweight
        grads[f"{name}.b"][...] += dbias
    return dx


class ActorCritic:
    """Forward and backward passes of the network described by a ``NetworkSpec``"""

    def __init__(self, spec: NetworkSpec):
        self.spec = spec
        self.layout = parameter_layout(spec)
        self._actor_names = _layer_names("actor", len(spec.hidden))
        self._critic_names = _layer_names("critic", len(spec.hidden))

    def _check_input(self, params: ParameterSet, obs: NetworkInput) -> int:
        spec = self.spec
        if params.layout.size != self.layout.size:
            raise ContractViolationError(
                f"parameter set has {params.layout.size} values, the network needs {self.layout.size}",
            )
        batch = obs.history.shape[0]
        if obs.history.shape != (batch, spec.history_dim):
            raise ContractViolationError(f"history must have shape (N, {spec.history_dim}), got {obs.history.shape}")
        if obs.full_state.shape != (batch, spec.state_dim):
            raise ContractViolationError(f"full state must have shape (N, {spec.state_dim}), got {obs.full_state.shape}")
        if spec.mode.uses_pixels:
            expected = (batch, spec.image_size, spec.image_size)
            if obs.masks is None or obs.masks.shape != expected:
                actual = None if obs.masks is None else obs.masks.shape
                raise ContractViolationError(f"masks must have shape {expected}, got {actual}")
        return batch

    def forward(self, params: ParameterSet, obs: NetworkInput) -> Tuple[NetworkOutput, ForwardCache]:
        spec = self.spec
        batch = self._check_input(params, obs)
        dtype = params.dtype
        history = np.asarray(obs.history, dtype=dtype)
        full_state = np.asarray(obs.full_state, dtype=dtype)

        conv_caches = []
        conv_activations = []
        flat = latent = None
        if spec.mode.uses_pixels:
            x = np.asarray(obs.masks, dtype=dtype)[:, None]
            for k, layer in enumerate(spec.conv_layers):
                x, cache = conv2d_forward(x, params[f"conv{k}.w"], params[f"conv{k}.b"], layer.stride)
                x = relu_forward(x)
                conv_caches.append(cache)
                conv_activations.append(x)
            flat = x.reshape(batch, -1)
            latent = relu_forward(dense_forward(flat, params["latent.w"], params["latent.b"]))
            actor_in = np.concatenate([latent, history], axis=1)
            if spec.mode is Mode.PIXEL_ASYM:
                critic_in = np.concatenate([latent, history, full_state], axis=1)
            else:
                critic_in = actor_in
        else:
            actor_in = critic_in = np.concatenate([full_state, history], axis=1)

        mean, actor_trace = _mlp_forward(params, self._actor_names, actor_in)
        value, critic_trace = _mlp_forward(params, self._critic_names, critic_in)
        output = NetworkOutput(mean=mean, log_std=params["log_std"].copy(), value=value[:, 0], latent=latent)
        cache = ForwardCache(
            batch_size=batch,
            conv_caches=tuple(conv_caches),
            conv_activations=tuple(conv_activations),
            flat=flat,
            latent=latent,
            actor=actor_trace,
            critic=critic_trace,
        )
        return output, cache

    def backward(self, params: ParameterSet, cache: ForwardCache, output_grads: OutputGradients) -> ParameterSet:
        spec = self.spec
        grads = ParameterSet.zeros(self.layout, params.dtype)
        dtype = params.dtype
        batch = cache.batch_size

        if output_grads.log_std is not None:
            d_log_std = np.asarray(output_grads.log_std, dtype=dtype)
            grads["log_std"][...] += d_log_std.sum(axis=0) if d_log_std.ndim == 2 else d_log_std

        d_mean = output_grads.mean
        if d_mean is None:
            d_mean = np.zeros((batch, spec.action_dim), dtype=dtype)
        d_actor_in = _mlp_backward(params, grads, self._actor_names, np.asarray(d_mean, dtype=dtype), cache.actor)

        d_value = output_grads.value
        if d_value is None:
            d_value = np.zeros(batch, dtype=dtype)
        d_critic_in = _mlp_backward(
            params, grads, self._critic_names, np.asarray(d_value, dtype=dtype).reshape(batch, 1), cache.critic,
        )

        if not spec.mode.uses_pixels:
            return grads

        # both heads take the latent as their leading block
        d_latent = d_actor_in[:, :spec.latent_dim] + d_critic_in[:, :spec.latent_dim]
        d_latent = relu_backward(d_latent, cache.latent)
        d_flat, dweight, dbias = dense_backward(d_latent, cache.flat, params["latent.w"])
        grads["latent.w"][...] += dweight
        grads["latent.b"][...] += dbias

        dx = d_flat.reshape(cache.conv_activations[-1].shape)
        for k in reversed(range(len(spec.conv_layers))):
            dx = relu_backward(dx, cache.conv_activations[k])
            dx, dweight, dbias = conv2d_backward(dx, params[f"conv{k}.w"], cache.conv_caches[k], need_input_grad=k > 0)
            grads[f"conv{k}.w"][...] += dweight
            grads[f"conv{k}.b"][...] += dbias
        return grads


@lru_cache(maxsize=16)
def network_for(spec: NetworkSpec) -> ActorCritic:
    return ActorCritic(spec)


def forward(params: ParameterSet, spec: NetworkSpec, obs: NetworkInput) -> NetworkOutput:
    output, _ = network_for(spec).forward(params, obs)
    return output


def forward_with_cache(params: ParameterSet, spec: NetworkSpec, obs: NetworkInput) -> Tuple[NetworkOutput, ForwardCache]:
    return network_for(spec).forward(params, obs)


def backward(
    params: ParameterSet,
    spec: NetworkSpec,
    cache: ForwardCache,
    output_grads: OutputGradients,
) -> ParameterSet:
    """Exact gradients of ``sum(output * output_grads)`` with respect to every parameter"""
    return network_for(spec).backward(params, cache, output_grads)
