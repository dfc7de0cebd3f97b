import pytest

from xmap.arithmetic import PrimeOracle


@pytest.fixture(scope="session")
def oracle100k():
    return PrimeOracle(100_000)


@pytest.fixture(scope="session")
def oracle_small():
    return PrimeOracle(2_000)
