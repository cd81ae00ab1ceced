import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from loopspace.catcoalg import from_presentation
from loopspace.fixtures import STANDARD_FIXTURES


@pytest.fixture(scope="session")
def coalgebras():
    return {name: from_presentation(fn())
            for name, fn in STANDARD_FIXTURES.items()}


@pytest.fixture(scope="session")
def presentations():
    return {name: fn() for name, fn in STANDARD_FIXTURES.items()}
