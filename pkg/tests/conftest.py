import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import fixed_instances  # noqa: E402

from greenindex import core, factories  # noqa: E402


@pytest.fixture(scope="session")
def instances():
    return fixed_instances()


@pytest.fixture(scope="session")
def z6():
    return factories.zmod(6)


@pytest.fixture(scope="session")
def t03(z6):
    return core.closure(z6, [3])
