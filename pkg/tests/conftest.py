import numpy as np
import pytest

from morrey import Sequence


def random_sequence(rng, max_len=64, heavy=False):
    length = int(rng.integers(1, max_len + 1))
    offset = int(rng.integers(-32, 33))
    if heavy:
        vals = rng.standard_cauchy(size=length)
        peak = np.max(np.abs(vals))
        if peak > 0:
            vals = vals / peak
    else:
        vals = rng.choice([-1.0, 0.0, 1.0], size=length)
    return Sequence.of(vals, offset=offset)


@pytest.fixture
def rng():
    return np.random.default_rng(20230317)
