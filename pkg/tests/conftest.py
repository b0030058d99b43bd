import numpy as np
import pytest


@pytest.fixture
def matrix_a() -> np.ndarray:
    """2x2 test matrix with spectrum {2, 1}."""
    return np.array([[1.5, 0.5], [0.5, 1.5]])


@pytest.fixture
def matrix_c() -> np.ndarray:
    """4x4 diagonal test matrix with spectrum {0, 1, 2, 3}."""
    return np.diag([0.0, 1.0, 2.0, 3.0])
