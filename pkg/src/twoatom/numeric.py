"""Brute-force reference: explicit Hamiltonian matrices and exact propagation.

Operators act on the truncated joint space in the n-major ordering of
:mod:`twoatom.core`. Propagation diagonalizes the Hermitian matrix once and
exponentiates the eigenvalues, so there is no integrator error.

Frames. The frame generator is ``n + sigma_z^(1)/2 + sigma_z^(2)/2``; it
commutes with every Hamiltonian built here, so the lab-frame Hamiltonian is
simply ``omega * generator + H_I``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import JointKet, ModelParams, TruncationError, partial_trace, purity_deficit

__all__ = [
    "KINDS",
    "PropagationError",
    "OperatorMatrix",
    "destroy",
    "sigma_minus",
    "sigma_z",
    "embed",
    "build_hamiltonian",
    "propagate",
    "propagate_many",
    "frame_transform",
    "dispersive_validity",
    "DispersiveReport",
    "compare_dispersive_vs_exact",
    "top_fock_population",
    "LEAKAGE_TOL",
]

KINDS = ("interaction", "lab", "exact-two-dipole", "frame-generator")

# how lambda2 is obtained from the bare dipole coupling in the exact comparison
MAPPINGS = {
    "standard": lambda lam, delta: lam**2 / delta,
    "printed": lambda lam, delta: lam / delta,
}


# population allowed in the two highest Fock levels before a run counts as truncated
LEAKAGE_TOL = 1e-8


class PropagationError(RuntimeError):
    """The eigendecomposition of a Hamiltonian failed."""


def destroy(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1).astype(complex)


def sigma_minus() -> np.ndarray:
    """``|g><e|`` in the (g, e) ordering."""
    return np.array([[0, 1], [0, 0]], dtype=complex)


def sigma_z() -> np.ndarray:
    return np.diag([-1.0, 1.0]).astype(complex)


def embed(n_max: int, field_op=None, atom1_op=None, atom2_op=None) -> np.ndarray:
    """Kronecker product with identities on the unspecified factors."""
    f = np.eye(n_max + 1) if field_op is None else field_op
    q1 = np.eye(2) if atom1_op is None else atom1_op
    q2 = np.eye(2) if atom2_op is None else atom2_op
    return np.kron(np.kron(f, q1), q2)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    label: str
    n_max: int

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @functools.cached_property
    def eigh(self):
        try:
            w, v = np.linalg.eigh(self.entries)
        except np.linalg.LinAlgError as exc:
            raise PropagationError(f"eigendecomposition of {self.label} failed: {exc}") from exc
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(v))):
            raise PropagationError(f"eigendecomposition of {self.label} is not finite")
        return w, v


def _frame_generator(n_max):
    a = destroy(n_max)
    return (
        embed(n_max, field_op=a.conj().T @ a)
        + 0.5 * embed(n_max, atom1_op=sigma_z())
        + 0.5 * embed(n_max, atom2_op=sigma_z())
    )


def _jc(n_max, which):
    a, sm = destroy(n_max), sigma_minus()
    if which == 1:
        op = embed(n_max, field_op=a.conj().T, atom1_op=sm)
    else:
        op = embed(n_max, field_op=a.conj().T, atom2_op=sm)
    return op + op.conj().T


def build_hamiltonian(
    kind: str, params: ModelParams, lambda_dipole: Optional[float] = None
) -> OperatorMatrix:
    """Hamiltonian matrix of the requested ``kind``.

    * ``interaction``: ``(delta + lambda2 n) sigma_z2 + lambda1 JC_1``.
    * ``lab``: ``omega * frame-generator + interaction``; needs ``params.omega``.
    * ``exact-two-dipole``: atom 2 coupled by ``lambda_dipole (a^+ sigma_-2 + h.c.)``
      with detuning term ``(delta / 2) sigma_z2``, in the rotating frame.
    * ``frame-generator``: ``n + sigma_z1/2 + sigma_z2/2`` (diagonal).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown Hamiltonian kind {kind!r}; choose from {KINDS}")
    if (kind == "exact-two-dipole") != (lambda_dipole is not None):
        raise ValueError("lambda_dipole is required for, and only for, kind='exact-two-dipole'")

    n_max = params.n_max
    a = destroy(n_max)
    num = a.conj().T @ a
    sz2 = embed(n_max, atom2_op=sigma_z())

    if kind == "frame-generator":
        h = _frame_generator(n_max)
    elif kind == "exact-two-dipole":
        h = 0.5 * params.delta * sz2 + params.lambda1 * _jc(n_max, 1) + lambda_dipole * _jc(n_max, 2)
    else:
        h = params.delta * sz2 + params.lambda2 * embed(n_max, field_op=num, atom2_op=sigma_z())
        h = h + params.lambda1 * _jc(n_max, 1)
        if kind == "lab":
            if params.omega is None:
                raise ValueError("the lab-frame Hamiltonian needs params.omega")
            h = h + params.omega * _frame_generator(n_max)
    return OperatorMatrix(h, kind, n_max)


def propagate_many(h: OperatorMatrix, init: JointKet, times) -> np.ndarray:
    """``exp(-i H t) |init>`` for every ``t``; rows are flat state vectors."""
    if init.vector.size != h.dim:
        raise ValueError(f"state dimension {init.vector.size} does not match H ({h.dim})")
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(times < 0):
        raise ValueError("times must be >= 0")
    w, v = h.eigh
    coeffs = v.conj().T @ init.vector
    return (np.exp(-1j * np.outer(times, w)) * coeffs) @ v.T


def propagate(h: OperatorMatrix, init: JointKet, t: float) -> JointKet:
    return JointKet(propagate_many(h, init, [t])[0].reshape(-1, 2, 2))


def frame_transform(state: JointKet, t: float, params: ModelParams, direction: str) -> JointKet:
    """Move a state between the interaction picture and the lab frame.

    ``to-lab`` applies ``exp(-i omega t G)``, ``to-interaction`` its inverse,
    with ``G`` the frame generator.
    """
    if direction not in ("to-lab", "to-interaction"):
        raise ValueError(f"direction must be 'to-lab' or 'to-interaction', got {direction!r}")
    if t < 0:
        raise ValueError("t must be >= 0")
    if params.omega is None:
        raise ValueError("frame transforms need params.omega")
    gen = np.diag(_frame_generator(state.n_max)).real
    sign = -1.0 if direction == "to-lab" else 1.0
    return JointKet(np.exp(sign * 1j * params.omega * t * gen) * state.vector)


def dispersive_validity(params: ModelParams, lambda_dipole: float, n: int) -> float:
    """``sqrt(n+1) * lambda / |delta|``; the dispersive picture needs this << 1."""
    if params.delta == 0:
        raise ValueError("dispersive validity is undefined at zero detuning")
    if n < 0:
        raise ValueError(f"photon index must be >= 0, got {n}")
    return math.sqrt(n + 1) * abs(lambda_dipole) / abs(params.delta)


@dataclass(frozen=True)
class DispersiveReport:
    """Deviation between atom-1 purity traces of the dispersive and exact models."""

    mapping: str
    lambda_dipole: float
    lambda2_used: float
    validity: float
    max_deviation: float
    mean_deviation: float
    times: np.ndarray = field(repr=False)
    zeta1_dispersive: np.ndarray = field(repr=False)
    zeta1_exact: np.ndarray = field(repr=False)

    def summary(self) -> str:
        return (
            f"mapping={self.mapping} (lambda2 = "
            f"{'lambda^2/delta' if self.mapping == 'standard' else 'lambda/delta'}"
            f" = {self.lambda2_used:.6g}), validity={self.validity:.4g}, "
            f"max|dzeta1|={self.max_deviation:.3e}, mean|dzeta1|={self.mean_deviation:.3e}"
        )


def _zeta1_trace(states: np.ndarray, tol: float) -> np.ndarray:
    return np.array([purity_deficit(partial_trace(JointKet(s), "atom1"), tol) for s in states])


def top_fock_population(states: np.ndarray) -> float:
    """Largest population found in the two highest Fock levels over a batch of flat states."""
    amps = states.reshape(states.shape[0], -1, 4)
    return float(np.max(np.sum(np.abs(amps[:, -2:, :]) ** 2, axis=(1, 2))))


def compare_dispersive_vs_exact(
    params: ModelParams,
    lambda_dipole: float,
    init: JointKet,
    times,
    mapping: str = "standard",
    leakage_tol: float = LEAKAGE_TOL,
) -> DispersiveReport:
    """Propagate ``init`` under the dispersive and the exact two-dipole models.

    The dispersive coupling is derived from ``lambda_dipole`` via ``mapping``
    (``standard``: ``lambda^2/delta``; ``printed``: ``lambda/delta``), which
    overrides ``params.lambda2``. Both runs use the rotating frame.

    Raises:
        TruncationError: either run puts more than ``leakage_tol`` into the top
            two Fock levels.
    """
    if mapping not in MAPPINGS:
        raise ValueError(f"mapping must be one of {sorted(MAPPINGS)}, got {mapping!r}")
    if params.delta == 0:
        raise ValueError("the dispersive comparison needs a nonzero detuning")
    times = np.atleast_1d(np.asarray(times, dtype=float))
    # highest photon number the initial state can reach: one above its support
    n_reach = int(np.nonzero(np.abs(init.amps).sum(axis=(1, 2)) > 0)[0].max()) + 1
    validity = dispersive_validity(params, lambda_dipole, n_reach)
    if validity >= 1:
        raise ValueError(f"dispersive model is meaningless here (validity ratio {validity:.3g} >= 1)")

    lambda2 = MAPPINGS[mapping](lambda_dipole, params.delta)
    if lambda2 < 0:
        raise ValueError(f"mapping {mapping!r} gives negative lambda2 = {lambda2}; use delta > 0")
    disp_params = ModelParams(
        lambda1=params.lambda1, lambda2=lambda2, delta=params.delta, n_max=params.n_max, tol=params.tol
    )
    disp = propagate_many(build_hamiltonian("interaction", disp_params), init, times)
    exact = propagate_many(build_hamiltonian("exact-two-dipole", params, lambda_dipole), init, times)
    for name, states in (("dispersive", disp), ("exact", exact)):
        top = top_fock_population(states)
        if top > leakage_tol:
            raise TruncationError(f"{name} run leaks {top:.3e} into the top Fock levels")

    z_disp = _zeta1_trace(disp, params.tol)
    z_exact = _zeta1_trace(exact, params.tol)
    dev = np.abs(z_disp - z_exact)
    return DispersiveReport(
        mapping=mapping,
        lambda_dipole=float(lambda_dipole),
        lambda2_used=float(lambda2),
        validity=validity,
        max_deviation=float(dev.max()),
        mean_deviation=float(dev.mean()),
        times=times,
        zeta1_dispersive=z_disp,
        zeta1_exact=z_exact,
    )
