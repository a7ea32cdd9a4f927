import numpy as np
import pytest
from tests_helpers import straight_track

from gaterace._internal.common import Mode
from gaterace._internal.quadsim.params import QuadParams


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)


@pytest.fixture()
def quad_params():
    return QuadParams()


@pytest.fixture()
def track():
    return straight_track()


@pytest.fixture(params=list(Mode), ids=lambda mode: mode.value)
def mode(request):
    return request.param


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch):
    for name in ("GATERACE_SEED", "GATERACE_WORKERS", "GATERACE_OUT", "GATERACE_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
