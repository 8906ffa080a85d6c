import numpy as np
import pytest
from hypothesis import strategies as st


def random_hermitian(rng, dim=4):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def random_density(rng, dim=4, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, dim=2):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_kraus(rng, env=4):
    v = random_unitary(rng, 2 * env)[:, :2]
    return tuple(v[2 * i : 2 * i + 2] for i in range(env))


def random_bloch(rng, pure=False):
    r = rng.normal(size=3)
    r /= np.linalg.norm(r)
    return r if pure else r * rng.random() ** (1 / 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20171016)


unit_floats = st.floats(-1.0, 1.0, allow_nan=False)
points3 = st.tuples(unit_floats, unit_floats, unit_floats)


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
