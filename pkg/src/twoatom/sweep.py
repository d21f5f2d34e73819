"""Observable traces on time grids: purities, inversions, oscillation periods."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from . import analytic, numeric
from .core import (
    FieldState,
    JointKet,
    ModelParams,
    QubitState,
    Subsystem,
    TruncationError,
    expectation_sigma_z,
    partial_trace,
    purity_deficit,
    product_state,
)

__all__ = [
    "SOURCES",
    "TimeGrid",
    "Scenario",
    "PurityTrace",
    "trace_purity",
    "trace_inversion",
    "estimate_period",
    "figure_dataset",
    "FIGURE_LAMBDA2",
]

SOURCES = ("analytic", "numeric")

# dispersive coupling used for each reproduced figure (lambda1 = 1)
FIGURE_LAMBDA2 = {1: 0.2, 2: 0.5}


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid of (scaled) times, endpoints included."""

    t_start: float = 0.0
    t_end: float = 20.0
    steps: int = 2001

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps!r}")
        if not (self.t_start >= 0 and self.t_end > self.t_start):
            raise ValueError(f"need t_end > t_start >= 0, got [{self.t_start}, {self.t_end}]")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, int(self.steps))

    @property
    def spacing(self) -> float:
        return (self.t_end - self.t_start) / (self.steps - 1)


@dataclass(frozen=True)
class Scenario:
    """Model parameters plus a product initial state."""

    params: ModelParams
    field: FieldState
    atom1: QubitState
    atom2: QubitState

    def __post_init__(self):
        if self.field.n_max != self.params.n_max:
            raise ValueError(f"field has n_max={self.field.n_max}, params say {self.params.n_max}")

    @classmethod
    def vacuum_excited(
        cls,
        lambda2: float,
        a2: complex = 2**-0.5,
        b2: complex = 2**-0.5,
        lambda1: float = 1.0,
        delta: float = 0.0,
        n_max: int = 15,
    ) -> "Scenario":
        """Vacuum field, atom 1 excited, atom 2 in ``a2|g> + b2|e>``."""
        params = ModelParams(lambda1=lambda1, lambda2=lambda2, delta=delta, n_max=n_max)
        return cls(params, FieldState.vacuum(n_max), QubitState.excited(), QubitState(a2, b2))

    @property
    def has_closed_form(self) -> bool:
        """Closed-form reduced states exist only for vacuum field and excited atom 1."""
        return bool(
            abs(self.field.amps[0]) > 1 - 1e-12 and abs(self.atom1.amp_e) > 1 - 1e-12
        )

    @cached_property
    def initial(self) -> JointKet:
        return product_state(self.field, self.atom1, self.atom2, self.params.n_max)


@dataclass(frozen=True, eq=False)
class PurityTrace:
    subsystem: Subsystem
    grid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.steps,):
            raise ValueError("trace length does not match the grid")
        if np.any(values < -1e-12) or np.any(values >= 1):
            raise ValueError("purity deficits must lie in [0, 1)")
        object.__setattr__(self, "values", values)

    @property
    def peak(self) -> float:
        return float(self.values.max())


def _check_source(source, scenario):
    if source not in SOURCES:
        raise ValueError(f"source must be one of {SOURCES}, got {source!r}")
    if source == "analytic" and not scenario.has_closed_form:
        raise ValueError("closed forms need the vacuum-field, excited-atom-1 initial state")


def _numeric_states(scenario: Scenario, times) -> np.ndarray:
    h = numeric.build_hamiltonian("interaction", scenario.params)
    states = numeric.propagate_many(h, scenario.initial, times)
    top = numeric.top_fock_population(states)
    if top > numeric.LEAKAGE_TOL:
        raise TruncationError(
            f"{top:.3e} of the population reaches the top two Fock levels; raise n_max"
        )
    return states


def trace_purity(source: str, subsystem, grid: TimeGrid, scenario: Scenario) -> PurityTrace:
    """Purity deficit of one subsystem at every grid time.

    ``analytic`` evaluates the closed-form reduced states; ``numeric``
    propagates the interaction-picture Hamiltonian and traces out the rest.
    """
    _check_source(source, scenario)
    sub = Subsystem(subsystem)
    p, times = scenario.params, grid.times

    if source == "analytic":
        if sub is Subsystem.ATOM1:
            values = analytic.zeta1_closed(times, p.theta, p.lambda1)
        elif sub is Subsystem.ATOM2:
            a2, b2 = scenario.atom2.amp_g, scenario.atom2.amp_e
            values = analytic.zeta2_closed(times, p.theta, a2, b2, p.lambda1)
        else:
            values = [purity_deficit(analytic.rhof_closed(t, p)) for t in times]
    else:
        states = _numeric_states(scenario, times)
        values = [purity_deficit(partial_trace(JointKet(s), sub), p.tol) for s in states]
    return PurityTrace(sub, grid, np.asarray(values, dtype=float))


def trace_inversion(
    source: str, grid: TimeGrid, scenario: Scenario, subsystem="atom1"
) -> np.ndarray:
    """Atomic inversion ``<sigma_z>`` of atom 1 (or atom 2) on the grid."""
    _check_source(source, scenario)
    sub = Subsystem(subsystem)
    if sub is Subsystem.FIELD:
        raise ValueError("inversion is defined for atoms only")
    p, times = scenario.params, grid.times

    if source == "analytic":
        if sub is Subsystem.ATOM1:
            rhos = [analytic.rho1_closed(t, p) for t in times]
        else:
            a2, b2 = scenario.atom2.amp_g, scenario.atom2.amp_e
            rhos = [analytic.rho2_closed(t, a2, b2, p) for t in times]
    else:
        rhos = [partial_trace(JointKet(s), sub) for s in _numeric_states(scenario, times)]
    return np.array([expectation_sigma_z(r) for r in rhos])


def _parabolic_vertex(y0, y1, y2):
    """Offset (in samples) of the vertex of the parabola through three points."""
    denom = y0 - 2.0 * y1 + y2
    return 0.0 if denom == 0 else 0.5 * (y0 - y2) / denom


def estimate_period(values, grid: TimeGrid) -> float:
    """Dominant period from the spacing of successive local minima.

    Each interior minimum is refined with a three-point parabola; the
    period is the mean spacing between the first and last minimum.

    Raises:
        ValueError: fewer than two minima were found.
    """
    y = np.asarray(values, dtype=float)
    if y.shape != (grid.steps,):
        raise ValueError("trace length does not match the grid")
    span = float(np.ptp(y))
    # ignore wiggles at rounding level so a flat trace has no minima
    flat = 1e-9 * span
    idx = [
        i
        for i in range(1, y.size - 1)
        if y[i - 1] - y[i] > flat and y[i + 1] >= y[i]
    ]
    if span == 0 or len(idx) < 2:
        raise ValueError(f"need at least two minima to estimate a period, found {len(idx)}")
    t = grid.times
    refined = [t[i] + _parabolic_vertex(y[i - 1], y[i], y[i + 1]) * grid.spacing for i in idx]
    return float((refined[-1] - refined[0]) / (len(refined) - 1))


def figure_dataset(figure: int, grid: Optional[TimeGrid] = None):
    """``(t, zeta1, zeta2)`` for one of the two reproduced purity figures.

    Both use lambda1 = 1, vacuum field, atom 1 excited and atom 2 in the
    balanced superposition; figure 1 has lambda2 = 0.2, figure 2 has 0.5.
    """
    if figure not in FIGURE_LAMBDA2:
        raise ValueError(f"figure must be 1 or 2, got {figure!r}")
    grid = grid or TimeGrid()
    scenario = Scenario.vacuum_excited(FIGURE_LAMBDA2[figure])
    z1 = trace_purity("analytic", "atom1", grid, scenario).values
    z2 = trace_purity("analytic", "atom2", grid, scenario).values
    return grid.times, z1, z2
