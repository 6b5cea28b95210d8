import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oscilab import GridFunction


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_grid(rng, d: int, n: int, scale: float = 1.0) -> GridFunction:
    return GridFunction(d, n, scale * rng.normal(size=n**d))


@pytest.fixture
def small_random_grids(rng):
    out = []
    for d, sizes in ((1, (2, 3, 5, 8)), (2, (2, 3, 4))):
        for n in sizes:
            for _ in range(3):
                out.append(random_grid(rng, d, n))
    return out
