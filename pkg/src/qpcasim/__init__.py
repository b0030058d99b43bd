"""Statevector simulation of eigenvalue-threshold quantum PCA.

A small dense simulator (``sim``), circuit builders for QFT, phase
estimation, and amplitude encoding (``builders``), a fixed-point eigenvalue
filter (``filtering``), the end-to-end pipeline with a classical reference
(``pipeline``), and gate-budget accounting (``complexity``).
"""

from .builders import (
    PhaseEstimationSpec,
    SpectralPrecisionWarning,
    StatePrepTree,
    build_phase_estimation,
    build_qft,
    build_state_prep,
    matrix_exponential_unitary,
    state_prep_tree,
)
from .complexity import CostReport, cost_baseline, cost_proposed, gate_ratio
from .filtering import (
    FilterParams,
    FilterTable,
    FixedPoint,
    ZeroEigenvalue,
    build_filter_table,
    build_filter_unitary,
    build_qft_adder,
    count_filter_gates,
    default_newton_iters,
    exact_shrink_table,
    newton_reciprocal,
    shrink,
)
from .layout import RegisterLayout
from .pipeline import (
    AllComponentsFiltered,
    HermitianInput,
    PipelineInvariantError,
    QpcaConfig,
    QpcaResult,
    ancilla_flip_gate,
    classical_pca_oracle,
    controlled_flip,
    fidelity,
    lambda_register_histogram,
    make_layout,
    run_qpca,
    second_phase_estimation,
    uncompute,
)
from .sim import (
    Circuit,
    GateOp,
    NonUnitaryMatrixError,
    SimulationError,
    StateVector,
    ZeroProbabilityOutcome,
    apply,
    circuit_unitary,
    cphase,
    hadamard,
    pauli_x,
    phase,
    post_select,
    ry,
    run,
    sample,
    swap,
)

__version__ = "0.1.0"

__all__ = [
    "AllComponentsFiltered",
    "Circuit",
    "CostReport",
    "FilterParams",
    "FilterTable",
    "FixedPoint",
    "GateOp",
    "HermitianInput",
    "NonUnitaryMatrixError",
    "PhaseEstimationSpec",
    "PipelineInvariantError",
    "QpcaConfig",
    "QpcaResult",
    "RegisterLayout",
    "SimulationError",
    "SpectralPrecisionWarning",
    "StatePrepTree",
    "StateVector",
    "ZeroEigenvalue",
    "ZeroProbabilityOutcome",
    "ancilla_flip_gate",
    "apply",
    "build_filter_table",
    "build_filter_unitary",
    "build_phase_estimation",
    "build_qft",
    "build_qft_adder",
    "build_state_prep",
    "circuit_unitary",
    "classical_pca_oracle",
    "controlled_flip",
    "cost_baseline",
    "cost_proposed",
    "count_filter_gates",
    "cphase",
    "default_newton_iters",
    "exact_shrink_table",
    "fidelity",
    "gate_ratio",
    "hadamard",
    "lambda_register_histogram",
    "make_layout",
    "matrix_exponential_unitary",
    "newton_reciprocal",
    "pauli_x",
    "phase",
    "post_select",
    "run",
    "run_qpca",
    "ry",
    "sample",
    "second_phase_estimation",
    "shrink",
    "state_prep_tree",
    "swap",
    "uncompute",
]
