import numpy as np
import pytest
from scipy.stats import unitary_group

from noisyops.kernels import BACKENDS
from noisyops.linalg import PAULIS


@pytest.fixture
def rng():
    return np.random.default_rng(20171019)


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


def random_hermitian(n, rng):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def random_complex(m, n, rng):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def scipy_unitary(n, rng):
    return unitary_group.rvs(n, random_state=rng)


def brute_choi(channel_fn, d):
    """(1/d) sum_jk E_jk (x) T(E_jk), evaluated entry by entry."""
    c = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for k in range(d):
            e = np.zeros((d, d))
            e[j, k] = 1
            img = channel_fn(e)
            for a in range(d):
                for b in range(d):
                    c[j * d + a, k * d + b] = img[a, b] / d
    return c


def pauli_example(x):
    return sum(s @ x @ s for s in PAULIS[1:]) / 3


def equal_up_to_phase(u, v, atol=1e-10):
    ov = np.vdot(v, u)
    if abs(ov) < 1e-12:
        return False
    return np.allclose(u, v * ov / abs(ov), atol=atol)
