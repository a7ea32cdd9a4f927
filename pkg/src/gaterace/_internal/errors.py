import dataclasses
from dataclasses import dataclass
from functools import partial
from typing import Any, Iterable, Optional

from .common import VarTuple
from .compat import CompatExceptionGroup
from .utils import with_module


def _str_by_fields(cls):
    field_names = [fld.name for fld in dataclasses.fields(cls)]

    def __str__(self):  # noqa: N807
        return ", ".join(f"{name}={getattr(self, name)!r}" for name in field_names)

    cls.__str__ = __str__
    return cls


def custom_exception(cls=None, /, *, str_by_fields: bool = True, public_module: bool = True):
    if cls is None:
        return partial(custom_exception, str_by_fields=str_by_fields, public_module=public_module)

    if str_by_fields:
        cls = _str_by_fields(cls)
    if public_module:
        cls = with_module("gaterace.errors")(cls)
    return cls


# __init__ of these classes do not call super().__init__, but it's ok!
# BaseException.__init__ does nothing useful


@custom_exception(str_by_fields=False)
@dataclass(eq=False, init=False)
class GateraceError(Exception):
    """The base class for every exception raised by gaterace"""


@custom_exception
@dataclass(eq=False)
class InvalidParametersError(GateraceError):
    """A parameter record violates an invariant spanning several fields"""

    record: str
    msg: str


@custom_exception
@dataclass(eq=False)
class NonFiniteStateError(GateraceError):
    """Integration produced NaN or infinity, usually because of nonsensical parameters"""

    components: VarTuple[str]
    dt: float


@custom_exception
@dataclass(eq=False)
class InvalidPixelError(GateraceError):
    u: float
    v: float


@custom_exception
@dataclass(eq=False)
class ContractViolationError(GateraceError):
    msg: str


@custom_exception
@dataclass(eq=False)
class CountMismatchError(GateraceError):
    expected: int
    actual: int


@custom_exception(str_by_fields=False)
@dataclass(eq=False, init=False)
class CheckpointError(GateraceError):
    """The base class for errors of reading checkpoint files"""


@custom_exception
@dataclass(eq=False)
class CorruptCheckpointError(CheckpointError):
    path: str
    reason: str


@custom_exception
@dataclass(eq=False)
class SpecMismatchError(CheckpointError):
    expected_hash: str
    actual_hash: str


@custom_exception
@dataclass(eq=False)
class NumericalAbortError(GateraceError):
    """Training produced a non-finite loss, the update was not applied"""

    env_steps: int
    diagnostics: Any


@custom_exception
@dataclass(eq=False)
class UnknownTrackError(GateraceError):
    name: str
    available: Iterable[str]


@custom_exception
@dataclass(eq=False)
class GateProblem(GateraceError):
    gate_index: Optional[int]
    msg: str


@custom_exception(str_by_fields=False)
@dataclass(eq=False, init=False)
class TrackValidationError(CompatExceptionGroup[GateProblem], GateraceError):
    """Collects every problem found in a track definition"""

    message: str
    exceptions: VarTuple[GateProblem]

    # stub `__init__` is required for right introspection
    def __init__(self, message: str, exceptions: VarTuple[GateProblem]):
        pass


@custom_exception
@dataclass(eq=False)
class MalformedImageError(GateraceError):
    path: str
    reason: str


@custom_exception
@dataclass(eq=False)
class InvalidArgumentError(GateraceError):
    """A command line argument or a file it names cannot be used"""

    argument: str
    msg: str
