import pytest

from brauerlab import admissible as adm
from brauerlab.rootsystem import root_system


@pytest.fixture(autouse=True, scope="session")
def _no_disk_cache():
    adm.set_orbit_store(None)


@pytest.fixture(scope="session")
def e6():
    return root_system("E6")


@pytest.fixture(scope="session")
def e7():
    return root_system("E7")


@pytest.fixture(scope="session")
def e8():
    return root_system("E8")


@pytest.fixture(scope="session")
def e6_sets(e6):
    """Every admissible set of E6, the empty set included."""
    return [B for Y in adm.orbit_representatives(e6) for B in adm.orbit_of(e6, Y).members]
