"""Two two-level atoms in one cavity mode: atom 1 resonant, atom 2 dispersive.

The package pairs closed-form dynamics (:mod:`twoatom.analytic`) with a
brute-force matrix propagator (:mod:`twoatom.numeric`) that serves as its
independent check.
"""

from .analytic import (
    CoefficientQuad,
    coefficients,
    evolve_analytic,
    rabi_frequency,
    rho1_closed,
    rho2_closed,
    rhof_closed,
    zeta1_closed,
    zeta2_closed,
)
from .core import (
    DensityMatrix,
    FieldState,
    JointKet,
    ModelParams,
    QubitState,
    Subsystem,
    TruncationError,
    expectation_sigma_z,
    partial_trace,
    product_state,
    purity_deficit,
)
from .numeric import (
    build_hamiltonian,
    compare_dispersive_vs_exact,
    dispersive_validity,
    frame_transform,
    propagate,
)
from .sweep import PurityTrace, Scenario, TimeGrid, estimate_period, trace_inversion, trace_purity

__all__ = [
    "CoefficientQuad",
    "coefficients",
    "evolve_analytic",
    "rabi_frequency",
    "rho1_closed",
    "rho2_closed",
    "rhof_closed",
    "zeta1_closed",
    "zeta2_closed",
    "DensityMatrix",
    "FieldState",
    "JointKet",
    "ModelParams",
    "QubitState",
    "Subsystem",
    "TruncationError",
    "expectation_sigma_z",
    "partial_trace",
    "product_state",
    "purity_deficit",
    "build_hamiltonian",
    "compare_dispersive_vs_exact",
    "dispersive_validity",
    "frame_transform",
    "propagate",
    "PurityTrace",
    "Scenario",
    "TimeGrid",
    "estimate_period",
    "trace_inversion",
    "trace_purity",
]

__version__ = "0.1.0"
