import json
from pathlib import Path

import pytest

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden_special():
    """High-precision special-function values (see tools/gen_goldens.py)."""
    return json.loads((GOLDEN_DIR / "special_values.json").read_text())


@pytest.fixture(scope="session")
def golden_benchmark():
    """Independently computed linear-benchmark trajectory and residuals."""
    return json.loads((GOLDEN_DIR / "linear_benchmark.json").read_text())
