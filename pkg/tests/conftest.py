import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from fast_robber import catalog  # noqa: E402
from fast_robber.bounds import BoundParams  # noqa: E402


@pytest.fixture(scope="session")
def petersen():
    return catalog.build("petersen")


@pytest.fixture(scope="session")
def heawood():
    return catalog.build("heawood")


@pytest.fixture(scope="session")
def mcgee():
    return catalog.build("mcgee")


@pytest.fixture(scope="session")
def tutte_coxeter():
    return catalog.build("tutte-coxeter")


@pytest.fixture(scope="session")
def tutte12():
    return catalog.build("tutte-12-cage")


@pytest.fixture
def mcgee_params():
    return BoundParams(d=2, t=2, m=2)


@pytest.fixture
def tutte12_params():
    return BoundParams(d=2, t=4, m=8)
