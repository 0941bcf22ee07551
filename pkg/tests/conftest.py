import pytest

from chamberq import cli


@pytest.fixture(scope="session")
def catalog():
    return cli.default_catalog()
