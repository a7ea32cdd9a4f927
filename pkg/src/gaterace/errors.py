from gaterace._internal.errors import (
    CheckpointError,
    ContractViolationError,
    CorruptCheckpointError,
    CountMismatchError,
    GateProblem,
    GateraceError,
    InvalidArgumentError,
    InvalidParametersError,
    InvalidPixelError,
    MalformedImageError,
    NonFiniteStateError,
    NumericalAbortError,
    SpecMismatchError,
    TrackValidationError,
    UnknownTrackError,
)

__all__ = (
    "GateraceError",
    "InvalidParametersError",
    "InvalidArgumentError",
    "NonFiniteStateError",
    "InvalidPixelError",
    "ContractViolationError",
    "CountMismatchError",
    "CheckpointError",
    "CorruptCheckpointError",
    "SpecMismatchError",
    "NumericalAbortError",
    "UnknownTrackError",
    "MalformedImageError",
    "GateProblem",
    "TrackValidationError",
)
