from gaterace._internal.common import Mode
from gaterace._internal.neural.checkpoint import (
    FORMAT_VERSION,
    MAGIC,
    decode_params,
    encode_params,
    load_params,
    save_params,
    spec_hash,
)
from gaterace._internal.neural.distribution import (
    ActionSample,
    gaussian_entropy,
    gaussian_log_prob,
    gaussian_log_prob_grads,
    sample_action,
)
from gaterace._internal.neural.network import (
    ATARI_CONV_LAYERS,
    ActorCritic,
    ConvLayerSpec,
    ForwardCache,
    NetworkInput,
    NetworkOutput,
    NetworkSpec,
    OutputGradients,
    backward,
    forward,
    forward_with_cache,
    init_params,
    parameter_layout,
)
from gaterace._internal.neural.params import ParameterLayout, ParameterSet

__all__ = (
    "Mode",
    "NetworkSpec",
    "ConvLayerSpec",
    "ATARI_CONV_LAYERS",
    "ActorCritic",
    "NetworkInput",
    "NetworkOutput",
    "OutputGradients",
    "ForwardCache",
    "ParameterLayout",
    "ParameterSet",
    "parameter_layout",
    "init_params",
    "forward",
    "forward_with_cache",
    "backward",
    "ActionSample",
    "sample_action",
    "gaussian_log_prob",
    "gaussian_log_prob_grads",
    "gaussian_entropy",
    "save_params",
    "load_params",
    "encode_params",
    "decode_params",
    "spec_hash",
    "MAGIC",
    "FORMAT_VERSION",
)
