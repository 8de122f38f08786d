import numpy as np
import pytest


@pytest.fixture
def matrix_b():
    """The rank-one 2x2 with zero aligning radius but sign-real radius 2."""
    return np.array([[1.0, -1.0], [1.0, -1.0]])


@pytest.fixture
def matrix_d0():
    """The discontinuity example at epsilon = 0."""
    return np.array([[1.0, -0.5], [0.5, 0.0]])


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))
