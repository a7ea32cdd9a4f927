import os
import sys
from abc import ABC, abstractmethod

from .common import VarTuple


class Requirement(ABC):
    """A runtime capability evaluated once at import, truthy when met"""

    def __init__(self):
        self.is_met = self._evaluate()

    def __bool__(self) -> bool:
        return self.is_met

    @abstractmethod
    def _evaluate(self) -> bool:
        ...

    @property
    @abstractmethod
    def fail_reason(self) -> str:
        ...


class PythonVersionRequirement(Requirement):
    def __init__(self, min_version: VarTuple[int]):
        self.min_version = min_version
        super().__init__()

    def _evaluate(self) -> bool:
        return sys.version_info >= self.min_version

    @property
    def fail_reason(self) -> str:
        return "Python >= " + ".".join(map(str, self.min_version)) + " is required"


class EnvFlagRequirement(Requirement):
    """Met when the environment variable is unset or holds a falsy value"""

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__()

    def _evaluate(self) -> bool:
        return os.environ.get(self.variable, "0").strip().lower() in ("", "0", "false", "no")

    @property
    def fail_reason(self) -> str:
        return f"Environment variable {self.variable!r} must not be set"


HAS_PY_310 = PythonVersionRequirement((3, 10))
HAS_NATIVE_EXC_GROUP = PythonVersionRequirement((3, 11))

# numba reads NUMBA_DISABLE_JIT at import, timing tests are meaningless without compiled kernels
HAS_JIT_ENABLED = EnvFlagRequirement("NUMBA_DISABLE_JIT")
