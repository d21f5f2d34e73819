import numpy as np
import pytest

from twoatom import FieldState, ModelParams, QubitState, product_state

SQRT_HALF = 2**-0.5

# criterion id -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE = {}


def random_qubit(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return QubitState(*v)


def random_field(rng, n_max, support=4):
    """Random normalized field with amplitudes only on |0>..|support-1>."""
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[:support] = rng.normal(size=support) + 1j * rng.normal(size=support)
    return FieldState(amps / np.linalg.norm(amps))


def random_product(rng, n_max=8, support=4):
    return product_state(random_field(rng, n_max, support), random_qubit(rng), random_qubit(rng))


def random_params(rng, n_max=8):
    return ModelParams(
        lambda1=rng.uniform(0.3, 2.0),
        lambda2=rng.uniform(0.0, 1.0),
        delta=rng.uniform(-3.0, 3.0),
        n_max=n_max,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {detail}")
