import numpy as np
import pytest

from quditpure.qlinalg import DensityMatrix, Operator, qudits


def random_density(D: int, M: int, rng: np.random.Generator) -> DensityMatrix:
    """Random full-rank density matrix on M qudits of dimension D."""
    n = D**M
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = g @ g.conj().T
    return DensityMatrix(Operator(qudits(D, M), m / np.trace(m).real))


@pytest.fixture
def rng():
    return np.random.default_rng(20230817)
