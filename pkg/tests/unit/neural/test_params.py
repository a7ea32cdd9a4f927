import numpy as np
import pytest

from gaterace.errors import ContractViolationError
from gaterace.neural import ParameterLayout, ParameterSet

LAYOUT = ParameterLayout([("a.w", (2, 3)), ("a.b", (2,)), ("scale", ())])


def test_entries_are_packed_in_order():
    entries = [(entry.name, entry.offset, entry.size) for entry in LAYOUT]
    assert entries == [("a.w", 0, 6), ("a.b", 6, 2), ("scale", 8, 1)]
    assert LAYOUT.size == 9
    assert "a.b" in LAYOUT
    assert "b.b" not in LAYOUT


def test_named_tensors_are_views():
    params = ParameterSet.zeros(LAYOUT)
    params["a.b"][...] = [1.0, 2.0]

    assert params.flat.tolist() == [0.0] * 6 + [1.0, 2.0, 0.0]
    assert params.dtype == np.float32


def test_from_tensors():
    params = ParameterSet.from_tensors(LAYOUT, {"a.w": np.ones((2, 3)), "a.b": np.zeros(2), "scale": 4.0})

    assert params["scale"] == 4.0
    assert params.tensors()["a.w"].shape == (2, 3)


def test_copy_is_independent():
    params = ParameterSet.zeros(LAYOUT)
    copied = params.copy()
    copied.flat[0] = 1.0

    assert params.flat[0] == 0.0
    assert params.astype(np.float64).dtype == np.float64


def test_duplicate_names_are_rejected():
    with pytest.raises(ContractViolationError):
        ParameterLayout([("w", (1,)), ("w", (2,))])


def test_wrong_flat_size_is_rejected():
    with pytest.raises(ContractViolationError):
        ParameterSet(LAYOUT, np.zeros(8))
