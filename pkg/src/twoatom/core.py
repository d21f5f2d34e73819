"""Hilbert-space foundation: states, tensor products, partial traces, purity.

Basis conventions used everywhere in the package:

* a qubit vector is ordered ``(g, e)``, so index 0 is the ground state;
* the joint space is field (x) atom 1 (x) atom 2, n-major, i.e. the flat index
  of ``|n, s1, s2>`` is ``4 * n + 2 * s1 + s2``;
* ``sigma_z`` has eigenvalues -1 on ``|g>`` and +1 on ``|e>``.

Nothing in this module knows about the cavity model itself.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import numpy as np

__all__ = [
    "RENORMALIZE_LIMIT",
    "TruncationError",
    "ModelParams",
    "QubitState",
    "FieldState",
    "JointKet",
    "DensityMatrix",
    "Subsystem",
    "product_state",
    "partial_trace",
    "purity_deficit",
    "expectation_sigma_z",
]

# Norm deviations below this are rounding noise and get renormalized;
# anything larger is treated as a caller bug.
RENORMALIZE_LIMIT = 1e-6

G, E = 0, 1


class TruncationError(RuntimeError):
    """Raised when population leaks past the Fock-space cutoff."""


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.flags.writeable = False
    return arr


def _normalized(amps: np.ndarray, what: str) -> np.ndarray:
    norm2 = float(np.sum(np.abs(amps) ** 2))
    if not np.isfinite(norm2) or abs(norm2 - 1.0) > RENORMALIZE_LIMIT:
        raise ValueError(f"{what} is not normalized (norm^2 = {norm2!r})")
    return amps / np.sqrt(norm2)


@dataclass(frozen=True)
class ModelParams:
    """Physical constants and numerical settings of the two-atom model.

    Rates are in units where hbar = 1; with ``lambda1 = 1`` the time axis is
    the scaled time ``lambda1 * t``.

    Args:
        lambda1: resonant atom-field coupling, must be positive.
        lambda2: dispersive (effective) coupling of atom 2, non-negative.
        delta: atom-2 detuning ``omega2 - omega``. Derived from the two
            frequencies when omitted; checked against them when all three
            are given.
        omega: cavity frequency, only needed for lab-frame quantities.
        omega2: atom-2 transition frequency.
        n_max: highest Fock state kept in the truncated field space.
        tol: tolerance for density-matrix and leakage checks.
    """

    lambda1: float = 1.0
    lambda2: float = 0.0
    delta: Optional[float] = None
    omega: Optional[float] = None
    omega2: Optional[float] = None
    n_max: int = 15
    tol: float = 1e-10

    def __post_init__(self):
        if not self.lambda1 > 0:
            raise ValueError(f"lambda1 must be > 0, got {self.lambda1!r}")
        if not self.lambda2 >= 0:
            raise ValueError(f"lambda2 must be >= 0, got {self.lambda2!r}")
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError(f"n_max must be an integer >= 1, got {self.n_max!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol!r}")
        object.__setattr__(self, "n_max", int(self.n_max))

        both = self.omega is not None and self.omega2 is not None
        if self.delta is None:
            object.__setattr__(self, "delta", float(self.omega2 - self.omega) if both else 0.0)
        elif both and not np.isclose(self.delta, self.omega2 - self.omega, rtol=0, atol=1e-12):
            raise ValueError(
                f"delta={self.delta!r} disagrees with omega2 - omega = {self.omega2 - self.omega!r}"
            )

    @property
    def theta(self) -> float:
        """Dimensionless dispersive strength ``lambda2 / (2 lambda1)``."""
        return self.lambda2 / (2.0 * self.lambda1)

    @property
    def dim(self) -> int:
        return 4 * (self.n_max + 1)


@dataclass(frozen=True)
class QubitState:
    """Pure state ``amp_g |g> + amp_e |e>`` of one two-level atom."""

    amp_g: complex
    amp_e: complex

    def __post_init__(self):
        g, e = _normalized(np.array([self.amp_g, self.amp_e], dtype=complex), "qubit state")
        object.__setattr__(self, "amp_g", complex(g))
        object.__setattr__(self, "amp_e", complex(e))

    @classmethod
    def ground(cls) -> "QubitState":
        return cls(1.0, 0.0)

    @classmethod
    def excited(cls) -> "QubitState":
        return cls(0.0, 1.0)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.amp_g, self.amp_e], dtype=complex)


@dataclass(frozen=True, eq=False)
class FieldState:
    """Pure field state ``sum_n A_n |n>`` on the Fock ladder ``0..n_max``."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.atleast_1d(np.asarray(self.amps, dtype=complex))
        if amps.ndim != 1 or amps.size < 2:
            raise ValueError("field amplitudes must be a 1-d array with n_max >= 1")
        object.__setattr__(self, "amps", _readonly(_normalized(amps, "field state")))

    @classmethod
    def vacuum(cls, n_max: int) -> "FieldState":
        return cls.fock(0, n_max)

    @classmethod
    def fock(cls, n: int, n_max: int) -> "FieldState":
        if not 0 <= n <= n_max:
            raise ValueError(f"Fock index {n} outside 0..{n_max}")
        amps = np.zeros(n_max + 1, dtype=complex)
        amps[n] = 1.0
        return cls(amps)

    @property
    def n_max(self) -> int:
        return self.amps.size - 1

    def amp(self, n: int) -> complex:
        """``A_n``, zero outside the stored ladder."""
        return complex(self.amps[n]) if 0 <= n <= self.n_max else 0j


@dataclass(frozen=True, eq=False)
class JointKet:
    """Pure state of field (x) atom 1 (x) atom 2.

    ``amps[n, s1, s2]`` is the amplitude of ``|n, s1, s2>`` with ``s = 0`` for
    ground and ``s = 1`` for excited. ``factors`` holds the (field, atom1,
    atom2) triple when the ket was built by :func:`product_state`.
    """

    amps: np.ndarray
    factors: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim == 1:
            if amps.size % 4 or amps.size < 8:
                raise ValueError(f"flat joint vector has bad length {amps.size}")
            amps = amps.reshape(-1, 2, 2)
        if amps.ndim != 3 or amps.shape[1:] != (2, 2) or amps.shape[0] < 2:
            raise ValueError(f"joint amplitudes must have shape (n_max+1, 2, 2), got {amps.shape}")
        object.__setattr__(self, "amps", _readonly(_normalized(amps, "joint state")))

    @property
    def n_max(self) -> int:
        return self.amps.shape[0] - 1

    @property
    def vector(self) -> np.ndarray:
        """Flat state vector in the n-major basis ordering."""
        return self.amps.reshape(-1)

    def density_matrix(self) -> "DensityMatrix":
        v = self.vector
        return DensityMatrix(np.outer(v, v.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix.

    Positivity is checked with an eigenvalue floor of ``-tol``.
    """

    entries: np.ndarray
    tol: float = 1e-10

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {rho.shape}")
        tol = self.tol
        if np.max(np.abs(rho - rho.conj().T)) > tol:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > tol:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        if np.linalg.eigvalsh(rho).min() < -tol:
            raise ValueError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "entries", _readonly(rho))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


class Subsystem(str, enum.Enum):
    FIELD = "field"
    ATOM1 = "atom1"
    ATOM2 = "atom2"


# tensor axis of each subsystem in the (n, s1, s2) layout
_AXIS = {Subsystem.FIELD: 0, Subsystem.ATOM1: 1, Subsystem.ATOM2: 2}


def _as_subsystems(keep) -> tuple:
    items = [keep] if isinstance(keep, (str, Subsystem)) else list(keep)
    try:
        subs = tuple(Subsystem(k) for k in items)
    except ValueError:
        raise ValueError(f"invalid subsystem id in {keep!r}; expected field, atom1 or atom2") from None
    if not subs or len(set(subs)) != len(subs):
        raise ValueError(f"invalid subsystem selection {keep!r}")
    return tuple(sorted(subs, key=_AXIS.get))


def product_state(
    field_state: FieldState,
    atom1: QubitState,
    atom2: QubitState,
    n_max: Optional[int] = None,
) -> JointKet:
    """Uncorrelated initial state ``|phi> (x) |atom1> (x) |atom2>``.

    Raises:
        ValueError: if ``n_max`` is given and disagrees with the field ladder.
    """
    if n_max is not None and field_state.n_max != n_max:
        raise ValueError(f"field state has n_max={field_state.n_max}, expected {n_max}")
    amps = np.einsum("n,a,b->nab", field_state.amps, atom1.vector, atom2.vector)
    return JointKet(amps, factors=(field_state, atom1, atom2))


def partial_trace(
    state: Union[JointKet, DensityMatrix],
    keep: Union[str, Subsystem, Iterable[Union[str, Subsystem]]],
) -> DensityMatrix:
    """Reduced density matrix of the subsystems in ``keep``.

    ``keep`` is one subsystem id or several; kept factors stay in the
    field, atom1, atom2 order. A :class:`DensityMatrix` input must live on
    the full joint space of dimension ``4 (n_max + 1)``.
    """
    subs = _as_subsystems(keep)
    kept = [_AXIS[s] for s in subs]
    letters = "nab"

    if isinstance(state, JointKet):
        psi = state.amps
        shape = psi.shape
        bra = "".join(letters[i].upper() if i in kept else letters[i] for i in range(3))
        out = "".join(letters[i] for i in kept) + "".join(letters[i].upper() for i in kept)
        red = np.einsum(f"nab,{bra}->{out}", psi, psi.conj())
    elif isinstance(state, DensityMatrix):
        if state.dim % 4 or state.dim < 8:
            raise ValueError(f"density matrix of dim {state.dim} is not a joint-space state")
        shape = (state.dim // 4, 2, 2)
        rho = state.entries.reshape(shape + shape)
        bra = "".join(letters[i].upper() if i in kept else letters[i] for i in range(3))
        out = "".join(letters[i] for i in kept) + "".join(letters[i].upper() for i in kept)
        red = np.einsum(f"nab{bra}->{out}", rho)
    else:
        raise TypeError(f"cannot take a partial trace of {type(state).__name__}")

    d = int(np.prod([shape[i] for i in kept]))
    return DensityMatrix(red.reshape(d, d), tol=getattr(state, "tol", 1e-10))


def _entries(rho) -> np.ndarray:
    return rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def purity_deficit(rho: Union[DensityMatrix, np.ndarray], tol: float = 1e-10) -> float:
    """``1 - Tr(rho^2)``: zero for a pure state, ``1 - 1/d`` when maximally mixed."""
    m = _entries(rho)
    tr = np.trace(m).real
    if abs(tr - 1.0) > tol:
        raise ValueError(f"purity needs a unit-trace matrix, trace is {tr!r}")
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(1.0 - np.sum(np.abs(m) ** 2))


def expectation_sigma_z(rho: Union[DensityMatrix, np.ndarray]) -> float:
    """Atomic inversion ``rho_ee - rho_gg`` of a single-qubit state."""
    m = _entries(rho)
    if m.shape != (2, 2):
        raise ValueError(f"inversion needs a 2x2 density matrix, got shape {m.shape}")
    return float(m[E, E].real - m[G, G].real)
