import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # golden_kapferer importable

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


@pytest.fixture
def tailorshop_text():
    return (DATA_DIR / "tailorshop_synthetic.dl").read_text()
