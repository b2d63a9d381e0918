import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from rangeshape.linalg import jacobi_eigh
from rangeshape.numrange import numerical_range

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    # compile the numba kernels once so timed sections measure work, not compilation
    jacobi_eigh(np.eye(3))
    numerical_range(np.eye(2) + 1j * np.diag([0, 1]), 8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def report(capsys):
    """Print a one-line verdict that survives output capture."""

    def emit(criterion, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        return ok

    return emit
