import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lambdaphi import build_spf_table


@pytest.fixture(scope="session")
def table_small():
    return build_spf_table(10**4)


@pytest.fixture(scope="session")
def table_100k():
    return build_spf_table(10**5)


@pytest.fixture(scope="session")
def table_1m():
    return build_spf_table(10**6)


@pytest.fixture(scope="session")
def table_big():
    # shared by the acceptance suite and the large-x harness tests
    return build_spf_table(10**7)
