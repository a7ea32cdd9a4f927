from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from ..common import FloatArray, VarTuple
from ..errors import ContractViolationError

PARAM_DTYPE = np.float32


@dataclass(frozen=True)
class ParameterEntry:
    name: str
    shape: VarTuple[int]
    offset: int

    @property
    def size(self) -> int:
        return int(np.prod(self.shape, dtype=np.int64))

    @property
    def slice(self) -> slice:
        return slice(self.offset, self.offset + self.size)


class ParameterLayout:
    """Index table placing named tensors into one flat vector"""

    def __init__(self, shapes: Iterable[Tuple[str, VarTuple[int]]]):
        entries = []
        offset = 0
        for name, shape in shapes:
            entry = ParameterEntry(name, tuple(shape), offset)
            entries.append(entry)
            offset += entry.size
        self.entries: VarTuple[ParameterEntry] = tuple(entries)
        self.size = offset
        self._by_name: Dict[str, ParameterEntry] = {entry.name: entry for entry in entries}
        if len(self._by_name) != len(self.entries):
            raise ContractViolationError("parameter names must be unique")

    def __getitem__(self, name: str) -> ParameterEntry:
        return self._by_name[name]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __iter__(self):
        return iter(self.entries)

    def view(self, flat: FloatArray, name: str) -> FloatArray:
        entry = self._by_name[name]
        return flat[entry.slice].reshape(entry.shape)


class ParameterSet:
    """Flat parameter vector, the named tensors are views into it"""

    def __init__(self, layout: ParameterLayout, flat: FloatArray):
        if flat.shape != (layout.size,):
            raise ContractViolationError(f"expected {layout.size} parameters, got shape {flat.shape}")
        self.layout = layout
        self.flat = flat

    @classmethod
    def zeros(cls, layout: ParameterLayout, dtype=PARAM_DTYPE) -> "ParameterSet":
        return cls(layout, np.zeros(layout.size, dtype=dtype))

    @classmethod
    def from_tensors(cls, layout: ParameterLayout, tensors: Mapping[str, FloatArray], dtype=PARAM_DTYPE):
        params = cls.zeros(layout, dtype)
        for entry in layout:
            params[entry.name][...] = tensors[entry.name]
        return params

    def __getitem__(self, name: str) -> FloatArray:
        return self.layout.view(self.flat, name)

    @property
    def dtype(self):
        return self.flat.dtype

    def astype(self, dtype) -> "ParameterSet":
        return ParameterSet(self.layout, self.flat.astype(dtype))

    def copy(self) -> "ParameterSet":
        return ParameterSet(self.layout, self.flat.copy())

    def with_flat(self, flat: FloatArray) -> "ParameterSet":
        return ParameterSet(self.layout, flat)

    def tensors(self) -> Dict[str, FloatArray]:
        return {entry.name: self[entry.name] for entry in self.layout}
