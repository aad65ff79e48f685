import pytest

from k3vw.qseries import shared_table


@pytest.fixture(scope="session")
def table():
    return shared_table(3000)
