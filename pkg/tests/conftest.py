import pytest

from d2dcap import CellConfig, RadioConfig, guard_distances


@pytest.fixture(scope="session")
def radio():
    """Urban single-cell defaults, interference-limited."""
    return RadioConfig(noise_mode="zero")


@pytest.fixture(scope="session")
def cell():
    return CellConfig()


@pytest.fixture(scope="session")
def gd(radio, cell):
    return guard_distances(radio, cell)
