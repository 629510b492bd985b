import numpy as np
import pytest
from hypothesis import settings

from csqbc import DensityMatrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_density(rng, dim, rank=None):
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (g + g.conj().T)


def random_unitary(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_pairs(n, seed=2024, max_dim=8):
    """Density-matrix pairs of mixed dimension and rank, pure states included."""
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(n):
        d = int(rng.integers(1, max_dim + 1))
        r0 = int(rng.integers(1, d + 1))
        r1 = int(rng.integers(1, d + 1))
        pairs.append((random_density(rng, d, r0), random_density(rng, d, r1)))
    return pairs


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for r in RESULTS:
        status = "PASS" if r.get("ok") else "FAIL"
        terminalreporter.write_line(f"[{status}] {r['label']}: {r['detail']}")
