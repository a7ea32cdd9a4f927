import re
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import MalformedImageError
from .render import GateMask

_HEADER = re.compile(rb"P5\s+(\d+)\s+(\d+)\s+(\d+)\s")


def encode_pgm(mask: GateMask) -> bytes:
    data = mask.to_uint8()
    height, width = data.shape
    return b"P5\n%d %d\n255\n" % (width, height) + data.tobytes()


def write_pgm(path: Union[str, Path], mask: GateMask) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_pgm(mask))
    return path


def decode_pgm(data: bytes, source: str = "<bytes>") -> np.ndarray:
    """Parses a binary graymap with 8-bit samples, header comments are not supported"""
    header = _HEADER.match(data)
    if header is None or header.group(3) != b"255":
        raise MalformedImageError(source, "not an 8-bit binary graymap")
    width, height = int(header.group(1)), int(header.group(2))
    body = data[header.end():]
    if len(body) != width * height:
        raise MalformedImageError(source, f"expected {width * height} samples, found {len(body)}")
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width)


def read_pgm(path: Union[str, Path]) -> np.ndarray:
    path = Path(path)
    return decode_pgm(path.read_bytes(), str(path))
