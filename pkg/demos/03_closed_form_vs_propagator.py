"""
Closed-form state against matrix propagation
============================================

The closed-form solution applies to any product initial state, not only the
vacuum case. Here a random field superposition and random atomic states are
evolved both ways and compared amplitude by amplitude, phases included.
"""

import numpy as np

from twoatom import FieldState, ModelParams, QubitState, evolve_analytic, product_state
from twoatom.numeric import build_hamiltonian, propagate

rng = np.random.default_rng(7)
n_max = 10

amps = np.zeros(n_max + 1, dtype=complex)
amps[:5] = rng.normal(size=5) + 1j * rng.normal(size=5)
field = FieldState(amps / np.linalg.norm(amps))


def random_qubit():
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return QubitState(*(v / np.linalg.norm(v)))


init = product_state(field, random_qubit(), random_qubit())
params = ModelParams(lambda1=1.0, lambda2=0.4, delta=2.5, n_max=n_max)
hamiltonian = build_hamiltonian("interaction", params)

for t in (0.5, 2.0, 10.0, 40.0):
    closed = evolve_analytic(init, t, params).amps
    brute = propagate(hamiltonian, init, t).amps
    print(f"t = {t:5.1f}   max amplitude difference = {np.abs(closed - brute).max():.2e}")
