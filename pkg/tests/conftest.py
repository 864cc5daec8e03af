import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polyquot.verify import Workspace


@pytest.fixture(scope="session")
def ws():
    """Shared memoized workspace: universal groups and quotient reports."""
    return Workspace()
