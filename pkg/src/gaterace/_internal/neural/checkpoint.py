"""Binary checkpoint files.

Layout, all little-endian::

    4 bytes   magic b"GRCK"
    u16       format version
    32 bytes  sha256 of the canonical JSON form of the NetworkSpec
    u64       parameter count
    f32 * n   parameters in layout order

The canonical JSON form is the adaptix dump of the NetworkSpec serialized with sorted keys and no whitespace.
"""
import hashlib
import json
import logging
import struct
from pathlib import Path
from typing import Union

import numpy as np
from adaptix import Retort

from ..errors import CorruptCheckpointError, SpecMismatchError
from ..utils import add_note
from .network import NetworkSpec, parameter_layout
from .params import ParameterSet

logger = logging.getLogger(__name__)

MAGIC = b"GRCK"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sH32sQ")
_FLOAT = np.dtype("<f4")

_spec_retort = Retort()


def spec_hash(spec: NetworkSpec) -> bytes:
    canonical = json.dumps(_spec_retort.dump(spec), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).digest()


def encode_params(params: ParameterSet, spec: NetworkSpec) -> bytes:
    body = np.ascontiguousarray(params.flat, dtype=_FLOAT).tobytes()
    return _HEADER.pack(MAGIC, FORMAT_VERSION, spec_hash(spec), params.layout.size) + body


def decode_params(data: bytes, spec: NetworkSpec, path: str = "<bytes>") -> ParameterSet:
    if len(data) < _HEADER.size:
        raise CorruptCheckpointError(path, f"file is {len(data)} bytes, shorter than the header")
    magic, version, digest, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CorruptCheckpointError(path, f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise CorruptCheckpointError(path, f"unsupported format version {version}")
    expected = spec_hash(spec)
    if digest != expected:
        raise SpecMismatchError(expected_hash=expected.hex(), actual_hash=digest.hex())

    layout = parameter_layout(spec)
    body = data[_HEADER.size:]
    if count != layout.size or len(body) != count * _FLOAT.itemsize:
        raise CorruptCheckpointError(
            path, f"expected {layout.size} parameters, header says {count} and body holds {len(body)} bytes",
        )
    return ParameterSet(layout, np.frombuffer(body, dtype=_FLOAT).astype(np.float32))


def save_params(params: ParameterSet, spec: NetworkSpec, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(encode_params(params, spec))
    tmp.replace(path)
    logger.info("Saved checkpoint %s (%d parameters)", path, params.layout.size)
    return path


def load_params(path: Union[str, Path], spec: NetworkSpec) -> ParameterSet:
    path = Path(path)
    try:
        return decode_params(path.read_bytes(), spec, str(path))
    except SpecMismatchError as exc:
        add_note(exc, f"while loading checkpoint {path}")
        raise
