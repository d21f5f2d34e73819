"""Closed-form dynamics of the resonant + dispersive two-atom cavity model.

In the interaction picture the Hamiltonian is

    H_I = (delta + lambda2 n) sigma_z^(2) + lambda1 (a^+ sigma_-^(1) + sigma_+^(1) a)

with Pauli ``sigma_z`` (eigenvalues +-1). Atom 2 is never flipped, so for a
fixed atom-2 level the problem splits into 2x2 Jaynes-Cummings blocks
``{|N-1, e1>, |N, g1>}``, each rotating at ``Delta_N``.

Amplitude families, indexed by ``n`` like the printed solution::

    c1  |n-1, e1, e2>      c2  |n, g1, e2>      phase exp(-i[delta + lambda2 (n - 1/2)] t)
    c3  |n,   e1, g2>      c4  |n+1, g1, g2>    phase exp(+i[delta + lambda2 (n + 1/2)] t)

The signs here come from solving the Schrodinger equation directly; the
numeric propagator in :mod:`twoatom.numeric` agrees entrywise.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import (
    DensityMatrix,
    FieldState,
    JointKet,
    ModelParams,
    QubitState,
    TruncationError,
)

__all__ = [
    "CoefficientQuad",
    "rabi_frequency",
    "sin_over",
    "coefficients",
    "phase_factors",
    "evolve_analytic",
    "evolve_analytic_many",
    "rho1_closed",
    "rho2_closed",
    "rhof_closed",
    "zeta1_closed",
    "zeta2_closed",
]

_SERIES_CUTOFF = 1e-4


class CoefficientQuad(NamedTuple):
    """Amplitudes of the four basis families at one index ``n`` (phases excluded)."""

    c1: complex
    c2: complex
    c3: complex
    c4: complex


def rabi_frequency(n: int, params: ModelParams) -> float:
    """Modified Rabi rate ``Delta_n = sqrt(lambda2^2 / 4 + n lambda1^2)``."""
    if n < 0:
        raise ValueError(f"photon index must be >= 0, got {n}")
    return float(np.sqrt(params.lambda2**2 / 4.0 + n * params.lambda1**2))


def sin_over(rate, t):
    """``sin(rate * t) / rate``, finite as ``rate -> 0``.

    Uses a Taylor series when ``|rate * t| < 1e-4``.
    """
    rate = np.asarray(rate, dtype=float)
    t = np.asarray(t, dtype=float)
    x = rate * t
    small = np.abs(x) < _SERIES_CUTOFF
    safe = np.where(small, 1.0, rate)
    series = t * (1.0 - x**2 / 6.0 + x**4 / 120.0)
    out = np.where(small, series, np.sin(x) / safe)
    return out if out.ndim else float(out)


def _blocks(n, t, params):
    """cos, sin/Delta for the two blocks touched by index ``n``: ``Delta_n`` and ``Delta_{n+1}``."""
    d_lo = rabi_frequency(max(n, 0), params)
    d_hi = rabi_frequency(max(n + 1, 0), params)
    return np.cos(d_lo * t), sin_over(d_lo, t), np.cos(d_hi * t), sin_over(d_hi, t)


def _quad(n, t, field, atom1, atom2, params) -> tuple:
    lam1, half2 = params.lambda1, params.lambda2 / 2.0
    a1, b1 = atom1.amp_g, atom1.amp_e
    a2, b2 = atom2.amp_g, atom2.amp_e
    cos_lo, sin_lo, cos_hi, sin_hi = _blocks(n, t, params)

    if n >= 0:
        x_e = field.amp(n - 1) * b1 * b2
        x_g = field.amp(n) * a1 * b2
        root = np.sqrt(n) * lam1
        c1 = (cos_lo + 1j * half2 * sin_lo) * x_e - 1j * root * sin_lo * x_g
        c2 = (cos_lo - 1j * half2 * sin_lo) * x_g - 1j * root * sin_lo * x_e
    else:
        c1 = c2 = 0j * np.asarray(t)

    # atom 2 in |g>: the sign of the dispersive term flips
    y_e = field.amp(n) * b1 * a2
    y_g = field.amp(n + 1) * a1 * a2
    root = np.sqrt(n + 1) * lam1
    c3 = (cos_hi - 1j * half2 * sin_hi) * y_e - 1j * root * sin_hi * y_g
    c4 = (cos_hi + 1j * half2 * sin_hi) * y_g - 1j * root * sin_hi * y_e
    return c1, c2, c3, c4


def coefficients(
    n: int,
    t: float,
    field: FieldState,
    atom1: QubitState,
    atom2: QubitState,
    params: ModelParams,
) -> CoefficientQuad:
    """The four family amplitudes at index ``n`` and time ``t``.

    ``n = -1`` is accepted and gives the ``|0, g1, g2>`` amplitude as ``c4``;
    families whose basis state would have a negative photon number are zero.
    """
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    if n < -1:
        return CoefficientQuad(0j, 0j, 0j, 0j)
    return CoefficientQuad(*(complex(c) for c in _quad(n, t, field, atom1, atom2, params)))


def phase_factors(n: int, t, params: ModelParams) -> tuple:
    """Dynamical phases multiplying ``(c1, c2, c3, c4)`` at index ``n``."""
    t = np.asarray(t, dtype=float)
    up = np.exp(-1j * (params.delta + params.lambda2 * (n - 0.5)) * t)
    down = np.exp(1j * (params.delta + params.lambda2 * (n + 0.5)) * t)
    return up, up, down, down


def evolve_analytic_many(init: JointKet, times, params: ModelParams) -> np.ndarray:
    """Closed-form amplitudes at every time in ``times``.

    Returns:
        complex array of shape ``(len(times), n_max + 1, 2, 2)``.

    Raises:
        ValueError: ``init`` is not a product state, or a time is negative.
        TruncationError: more than ``params.tol`` of the population would
            sit above ``n_max``.
    """
    if init.factors is None:
        raise ValueError("closed-form evolution needs a product initial state")
    field, atom1, atom2 = init.factors
    if field.n_max != params.n_max:
        raise ValueError(f"initial state has n_max={field.n_max}, params say {params.n_max}")
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(times < 0):
        raise ValueError("times must be >= 0")

    n_max = params.n_max
    out = np.zeros((times.size, n_max + 1, 2, 2), dtype=complex)
    leaked = np.zeros(times.size)
    for n in range(-1, n_max + 2):
        c1, c2, c3, c4 = _quad(n, times, field, atom1, atom2, params)
        p1, p2, p3, p4 = phase_factors(n, times, params)
        for amp, phase, (m, s1, s2) in (
            (c1, p1, (n - 1, 1, 1)),
            (c2, p2, (n, 0, 1)),
            (c3, p3, (n, 1, 0)),
            (c4, p4, (n + 1, 0, 0)),
        ):
            if m < 0:
                continue
            if m > n_max:
                leaked += np.abs(amp) ** 2
                continue
            out[:, m, s1, s2] = amp * phase

    worst = float(leaked.max())
    if worst > params.tol:
        raise TruncationError(
            f"closed-form evolution puts {worst:.3e} of the population above n_max={n_max}"
        )
    return out


def evolve_analytic(init: JointKet, t: float, params: ModelParams) -> JointKet:
    """Interaction-picture state at time ``t`` from a product initial state."""
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    return JointKet(evolve_analytic_many(init, [t], params)[0])


def _populations(t, params):
    """(p_e, p_g) of atom 1 for the vacuum / excited-atom-1 initial condition."""
    d1 = rabi_frequency(1, params)
    s = sin_over(d1, t)
    p_e = np.cos(d1 * t) ** 2 + (params.lambda2 / 2.0) ** 2 * s**2
    p_g = params.lambda1**2 * s**2
    return p_e, p_g


def rho1_closed(t: float, params: ModelParams) -> DensityMatrix:
    """Atom-1 state for vacuum field, atom 1 excited, any atom-2 superposition.

    Diagonal in the ``(g, e)`` basis; atom 2's initial amplitudes drop out.
    """
    p_e, p_g = _populations(t, params)
    return DensityMatrix(np.diag([p_g, p_e]).astype(complex), tol=params.tol)


def rho2_closed(t: float, a2: complex, b2: complex, params: ModelParams) -> DensityMatrix:
    """Atom-2 state for the same initial condition, atom 2 starting in ``a2|g> + b2|e>``.

    Populations never change; only the coherence is dressed by the atom-1
    dynamics.
    """
    a2, b2 = QubitState(a2, b2).vector
    d1 = rabi_frequency(1, params)
    s = sin_over(d1, t)
    dressed = (np.cos(d1 * t) - 0.5j * params.lambda2 * s) ** 2 + params.lambda1**2 * s**2
    ge = dressed * np.exp(2j * (params.delta + params.lambda2 / 2.0) * t) * a2 * np.conj(b2)
    rho = np.array([[abs(a2) ** 2, ge], [np.conj(ge), abs(b2) ** 2]], dtype=complex)
    return DensityMatrix(rho, tol=params.tol)


def rhof_closed(t: float, params: ModelParams) -> DensityMatrix:
    """Field state for the same initial condition; lives on ``|0>`` and ``|1>`` only."""
    p_e, p_g = _populations(t, params)
    rho = np.zeros((params.n_max + 1, params.n_max + 1), dtype=complex)
    rho[0, 0], rho[1, 1] = p_e, p_g
    return DensityMatrix(rho, tol=params.tol)


def _transfer(t, theta, lambda1):
    if np.any(np.asarray(theta) < 0):
        raise ValueError("theta must be >= 0")
    q = 1.0 + np.asarray(theta, dtype=float) ** 2
    return np.sin(np.sqrt(q) * lambda1 * np.asarray(t, dtype=float)) ** 2, q


def zeta1_closed(t, theta: float, lambda1: float = 1.0):
    """Atom-1 purity deficit ``2 p (1 - p)``, ``p = sin^2(sqrt(1+theta^2) lambda1 t) / (1+theta^2)``.

    Vectorized over ``t``.
    """
    s2, q = _transfer(t, theta, lambda1)
    p = s2 / q
    return 2.0 * p * (1.0 - p)


def zeta2_closed(t, theta: float, a2: complex, b2: complex, lambda1: float = 1.0):
    """Atom-2 purity deficit ``8 |a2|^2 |b2|^2 theta^2 sin^4(...) / (1+theta^2)^2``."""
    s2, q = _transfer(t, theta, lambda1)
    return 8.0 * abs(a2) ** 2 * abs(b2) ** 2 * theta**2 * s2**2 / q**2
