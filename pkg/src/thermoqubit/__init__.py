"""Finite-temperature simulation of two logical qubits encoded in the Fock
states of one bosonic mode.

The package builds thermal density matrices of heated superpositions by
three independent routes, implements the half-period CNOT encoding, and
evaluates the temperature diagnostics (fidelity, Mandel Q, Wigner
function) with both first-principles numerics and the published closed
forms, reporting their discrepancies.
"""

from .errors import CutoffError, GridWideningError, MandelUndefinedError
from .fock import (
    FockMatrix,
    FockVector,
    basis_state,
    build_ladder,
    composite_index,
    identity,
    matrix_exponential,
    number_operator,
    partial_trace,
    reduce_pure_state,
    tensor_product,
    tensor_state,
)
from .gates import (
    LogicalState,
    cnot_logical,
    decode,
    encode,
    evolve_half_period,
    half_period_gate_matrix,
)
from .observables import (
    CLOSED_FORM_WIGNER_SCALE,
    GridSpec,
    ObservableReport,
    WignerGrid,
    fidelity_closed_form,
    fidelity_numeric,
    laguerre_assoc,
    mandel_closed_form,
    mandel_numeric,
    wigner_closed_form,
    wigner_from_density,
    wigner_negativity,
)
from .thermal import (
    DEFAULT_AMPLITUDES,
    PhysicalAmplitudes,
    ThermalParams,
    auto_cutoff,
    beta_omega_from_occupation,
    bogoliubov_factors,
    bogoliubov_unitary,
    gate_thermalization_residual,
    mean_occupation,
    thermal_number_states,
    thermal_state_density_expansion,
    thermal_state_density_operator,
    thermal_superposition_state,
    thermal_vacuum_density,
)
from .verify import run_verification

__version__ = "0.1.0"

__all__ = [
    "CLOSED_FORM_WIGNER_SCALE",
    "CutoffError",
    "DEFAULT_AMPLITUDES",
    "FockMatrix",
    "FockVector",
    "GridSpec",
    "GridWideningError",
    "LogicalState",
    "MandelUndefinedError",
    "ObservableReport",
    "PhysicalAmplitudes",
    "ThermalParams",
    "WignerGrid",
    "auto_cutoff",
    "basis_state",
    "beta_omega_from_occupation",
    "bogoliubov_factors",
    "bogoliubov_unitary",
    "build_ladder",
    "cnot_logical",
    "composite_index",
    "decode",
    "encode",
    "evolve_half_period",
    "fidelity_closed_form",
    "fidelity_numeric",
    "gate_thermalization_residual",
    "half_period_gate_matrix",
    "identity",
    "laguerre_assoc",
    "mandel_closed_form",
    "mandel_numeric",
    "matrix_exponential",
    "mean_occupation",
    "number_operator",
    "partial_trace",
    "reduce_pure_state",
    "run_verification",
    "tensor_product",
    "tensor_state",
    "thermal_number_states",
    "thermal_state_density_expansion",
    "thermal_state_density_operator",
    "thermal_superposition_state",
    "thermal_vacuum_density",
    "wigner_closed_form",
    "wigner_from_density",
    "wigner_negativity",
]
