import numpy as np
import pytest

from qsvtlab.linalg import rng_from_seed


@pytest.fixture
def rng():
    return rng_from_seed(20240817)


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + z.conj().T) / 2.0
