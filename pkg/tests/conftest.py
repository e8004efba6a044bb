"""Shared fixtures for the cohdistill test suite."""

import numpy as np
import pytest

from cohdistill import DensityMatrix, from_state_vector, ghz_type, w_type


@pytest.fixture
def w_half() -> DensityMatrix:
    return w_type(0.5)


@pytest.fixture
def ghz_half() -> DensityMatrix:
    return ghz_type(0.5)


@pytest.fixture
def bell() -> DensityMatrix:
    vec = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    return from_state_vector(vec, ("A", "B"))


def random_state_vector(n_qubits: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(2**n_qubits) + 1j * rng.standard_normal(2**n_qubits)
    return vec / np.linalg.norm(vec)
