import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from collatz_tree import _backend  # noqa: E402


@pytest.fixture(params=sorted(_backend.available()))
def backend(request):
    """Every kernel backend that imports in this environment."""
    return request.param
