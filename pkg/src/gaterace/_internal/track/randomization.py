from dataclasses import replace

import numpy as np

from .model import Track

AXES = ("x", "y", "z")


def randomize_gates(track: Track, gate_cm: float, rng: np.random.Generator) -> Track:
    """Moves every gate center by independent uniform offsets in ``[-gate_cm, gate_cm]`` per axis.

    ``gate_cm`` is expressed in meters despite its name.
    """
    offsets = rng.uniform(-gate_cm, gate_cm, size=(track.n_G, 3))
    return _shifted(track, offsets)


def displace_gates(track: Track, axis: str, sign: int, magnitude: float, rng: np.random.Generator) -> Track:
    """Pushes every gate along one world axis by ``sign * U(0, magnitude)``.

    Draws do not depend on ``magnitude``, so for one seed a larger magnitude scales the same pattern.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    if sign not in (-1, 1):
        raise ValueError(f"sign must be -1 or 1, got {sign!r}")

    offsets = np.zeros((track.n_G, 3))
    offsets[:, AXES.index(axis)] = sign * magnitude * rng.uniform(0.0, 1.0, size=track.n_G)
    return _shifted(track, offsets)


def _shifted(track: Track, offsets: np.ndarray) -> Track:
    gates = tuple(
        replace(gate, position=tuple(float(c) for c in np.add(gate.position, offset)))
        for gate, offset in zip(track.gates, offsets)
    )
    return replace(track, gates=gates)
