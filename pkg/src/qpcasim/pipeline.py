"""End-to-end principal component filtering on the statevector simulator.

The pipeline encodes a real symmetric matrix A = sum_k lambda_k u_k u_k^T as
the state sum_k sigma_k |u_k>|u_k> (sigma_k = lambda_k / ||A||_F), estimates
eigenvalues into a register, writes a shrinkage coefficient y(lambda) into a
second register, flips an ancilla wherever y != 0, uncomputes both registers,
and post-selects the ancilla.  What survives is the eigenvalue-thresholded
state  sum_{lambda_k > tau} sigma_k |u_k>|u_k>  up to normalization; a second
phase estimation then re-reads the surviving eigenvalues.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .builders import (
    PhaseEstimationSpec,
    SpectralPrecisionWarning,
    build_phase_estimation,
    build_state_prep,
)
from .complexity import cost_proposed
from .filtering import FilterParams, FilterTable, build_filter_table, build_filter_unitary
from .layout import RegisterLayout
from .sim import (
    Circuit,
    GateOp,
    SimulationError,
    StateVector,
    ZeroProbabilityOutcome,
    apply,
    post_select,
    run,
    sample,
)

UNCOMPUTE_ATOL = 1e-9


class AllComponentsFiltered(Exception):
    """No eigenvalue exceeds the threshold; the filtered state is empty."""


class PipelineInvariantError(SimulationError):
    """An internal consistency check failed (work registers not restored,
    stray population outside the post-selected block, and the like)."""


@dataclass(eq=False)
class HermitianInput:
    """A real symmetric matrix with its eigendecomposition attached.

    ``eigenvectors[:, k]`` pairs with ``eigenvalues[k]``; eigenvalues are
    sorted descending.  Use ``from_matrix`` to construct.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    singular_values: np.ndarray
    rank: int

    @classmethod
    def from_matrix(cls, matrix) -> "HermitianInput":
        m = np.array(matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix shape {m.shape} is not square")
        if np.max(np.abs(m - m.T)) > 1e-9:
            raise ValueError("matrix is not symmetric")
        eigvals, eigvecs = np.linalg.eigh(m)
        order = np.argsort(eigvals)[::-1]
        eigvals = eigvals[order]
        eigvecs = eigvecs[:, order]
        recon = (eigvecs * eigvals) @ eigvecs.T
        if np.max(np.abs(recon - m)) > 1e-9:
            raise PipelineInvariantError("eigendecomposition failed to reproduce the matrix")
        sv = np.abs(eigvals)
        rank = int(np.sum(sv > 1e-12))
        return cls(
            matrix=m,
            eigenvalues=eigvals,
            eigenvectors=eigvecs,
            singular_values=sv,
            rank=rank,
        )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def amplitude_encoding(self) -> np.ndarray:
        """Row-major flattening of the matrix over its Frobenius norm.

        Equal to sum_k sigma_k (u_k tensor u_k) with sigma_k the normalized
        eigenvalues, which is the state the pipeline starts from.
        """
        nrm = float(np.linalg.norm(self.matrix))
        if nrm < 1e-12:
            raise ValueError("cannot encode the zero matrix")
        return self.matrix.reshape(-1) / nrm


@dataclass(frozen=True)
class QpcaConfig:
    """Pipeline settings: threshold, register width, and measurement mode."""

    tau: float
    n_bits: int
    mode: str = "exact"
    shots: int = 8192
    seed: int = 0

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.n_bits < 1:
            raise ValueError("n_bits must be >= 1")
        if self.mode not in ("exact", "sampled"):
            raise ValueError(f"mode must be 'exact' or 'sampled', got {self.mode!r}")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")


@dataclass(eq=False)
class QpcaResult:
    """Everything the pipeline reports for one run.

    ``output_amps`` holds the post-selected data-register amplitudes (exact
    mode) or their sampled magnitude estimates; ``lambda_histogram`` maps
    eigenvalue-register integers to their probability mass after the second
    phase estimation.
    """

    success_prob: float
    output_amps: np.ndarray
    kept_count: int
    kept_eigenvalues: tuple[float, ...]
    lambda_histogram: dict[int, float]
    fidelity: float
    total_gates: int
    layout: RegisterLayout
    shots: int | None = None
    counts: dict[int, int] | None = None


def classical_pca_oracle(hin: HermitianInput, tau: float) -> tuple[int, np.ndarray]:
    """Brute-force reference: keep eigenpairs with lambda > tau, renormalize.

    Returns (number kept, expected data-register state).  Raises
    ``AllComponentsFiltered`` when nothing survives.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    kept = [k for k, lam in enumerate(hin.eigenvalues) if lam > tau]
    if not kept:
        raise AllComponentsFiltered(f"no eigenvalue exceeds tau={tau}")
    vec = np.zeros(hin.dim * hin.dim)
    for k in kept:
        u = hin.eigenvectors[:, k]
        vec += hin.eigenvalues[k] * np.kron(u, u)
    vec /= np.sqrt(sum(hin.eigenvalues[k] ** 2 for k in kept))
    return len(kept), vec


def fidelity(a, b) -> float:
    """|<a|b>| for unit vectors or StateVectors of equal dimension."""
    av = a.amps if isinstance(a, StateVector) else np.asarray(a, dtype=np.complex128)
    bv = b.amps if isinstance(b, StateVector) else np.asarray(b, dtype=np.complex128)
    if av.shape != bv.shape:
        raise ValueError(f"dimension mismatch: {av.shape} vs {bv.shape}")
    return float(np.abs(np.vdot(av, bv)))


def ancilla_flip_gate(layout: RegisterLayout) -> GateOp:
    """X on the ancilla for every nonzero y-register value (OR over y bits)."""
    n = layout.eig_bits
    size = 1 << n
    perm = np.zeros((2 * size, 2 * size))
    for y in range(size):
        for anc in (0, 1):
            src = anc * size + y
            dst = (anc ^ (y != 0)) * size + y
            perm[dst, src] = 1.0
    return GateOp(perm, (layout.ancilla,) + layout.y_reg, label="CU_flip")


def controlled_flip(state: StateVector, layout: RegisterLayout) -> StateVector:
    return apply(state, ancilla_flip_gate(layout))


def _work_register_residual(state: StateVector, layout: RegisterLayout) -> float:
    """Probability mass with y or lambda register away from |0>."""
    idx = np.arange(state.amps.size)
    width = 2 * layout.eig_bits
    work = (idx >> layout.data_qubits) & ((1 << width) - 1)
    return float(np.sum(state.probabilities()[work != 0]))


def uncompute(
    state: StateVector,
    layout: RegisterLayout,
    filter_op: GateOp,
    pe_circuit: Circuit,
    atol: float | None = UNCOMPUTE_ATOL,
) -> StateVector:
    """Undo the filter write and the phase estimation.

    For register-exact spectra both work registers must return to |0> (the
    ancilla has already absorbed the kept/discarded distinction); residual
    mass beyond ``atol`` means the pipeline is broken.  Pass ``atol=None``
    to skip the check, e.g. for spectra the register can only approximate.
    """
    state = apply(state, filter_op.dagger())
    state = run(state, pe_circuit.inverse())
    if atol is not None:
        residual = _work_register_residual(state, layout)
        if residual > atol:
            raise PipelineInvariantError(
                f"work registers failed to uncompute: residual mass {residual:.3e}"
            )
    return state


def second_phase_estimation(
    state: StateVector, spec: PhaseEstimationSpec, layout: RegisterLayout
) -> StateVector:
    """Re-read eigenvalues of the surviving components into the lambda register."""
    pe = build_phase_estimation(spec, layout.lambda_reg, layout.u_reg, layout.num_qubits)
    return run(state, pe)


def lambda_register_histogram(state: StateVector, layout: RegisterLayout) -> dict[int, float]:
    """Marginal probability of each lambda-register value, zeros dropped."""
    n = layout.eig_bits
    idx = np.arange(state.amps.size)
    vals = (idx >> layout.data_qubits) & ((1 << n) - 1)
    mass = np.bincount(vals, weights=state.probabilities(), minlength=1 << n)
    return {int(v): float(p) for v, p in enumerate(mass) if p > 1e-12}


def make_layout(hin: HermitianInput, n_bits: int) -> RegisterLayout:
    k = hin.dim.bit_length() - 1
    if (1 << k) != hin.dim:
        raise ValueError(f"matrix dimension {hin.dim} is not a power of two")
    return RegisterLayout(eig_bits=n_bits, data_qubits=2 * k)


def run_qpca(
    hin: HermitianInput,
    config: QpcaConfig,
    filter_table: FilterTable | None = None,
) -> QpcaResult:
    """Simulate the full filtering pipeline on ``hin``.

    ``filter_table`` overrides the Newton-built table (same threshold
    semantics required); used to check that reciprocal rounding never leaks
    into the output.  Exact mode reports the post-selected amplitudes
    directly; sampled mode measures the pre-selection state ``config.shots``
    times, keeps ancilla-1 shots, and estimates amplitude magnitudes as
    sqrt(count / kept).

    Non-integer spectra are accepted with a warning: phase estimation then
    spreads each eigenvalue over nearby register values, the filter acts on
    that spread, and the work registers cannot be uncomputed exactly.  The
    reported output is the renormalized clean-register branch, a soft
    approximation of the thresholded state.

    Raises ``ZeroProbabilityOutcome`` when every component is filtered out.
    """
    layout = make_layout(hin, config.n_bits)

    rounded = np.round(hin.eigenvalues)
    exact_spectrum = bool(np.max(np.abs(hin.eigenvalues - rounded)) <= 1e-6)
    if not exact_spectrum:
        warnings.warn(
            "spectrum is not integer; register readout is approximate and the "
            "threshold acts on the spread register values",
            SpectralPrecisionWarning,
            stacklevel=2,
        )
    pe_spec = PhaseEstimationSpec(hin.matrix, config.n_bits)
    if filter_table is None:
        filter_table = build_filter_table(FilterParams(config.tau, config.n_bits))

    kept_eigenvalues = []
    for lam in hin.eigenvalues:
        reg = int(round(float(lam)))
        if abs(lam - reg) <= 1e-6:
            # integer eigenvalues land on register value reg mod 2**n, which
            # is what the filter actually sees
            kept = filter_table.y_raw(reg % (1 << config.n_bits)) > 0
        else:
            kept = lam > config.tau
        if kept:
            kept_eigenvalues.append(float(lam))

    prep = build_state_prep(
        hin.amplitude_encoding, qubits=layout.data_reg, num_qubits=layout.num_qubits
    )
    pe = build_phase_estimation(pe_spec, layout.lambda_reg, layout.u_reg, layout.num_qubits)
    filt = build_filter_unitary(filter_table, layout)
    flip = ancilla_flip_gate(layout)

    state = StateVector.zero(layout.num_qubits)
    state = run(state, prep)
    state = run(state, pe)
    state = apply(state, filt)
    state = apply(state, flip)
    state = uncompute(state, layout, filt, pe, atol=UNCOMPUTE_ATOL if exact_spectrum else None)

    success_prob, collapsed = post_select(state, layout.ancilla, 1)
    success_prob = min(success_prob, 1.0)

    # With ancilla = 1 and work registers at |0>, all mass sits in one
    # contiguous block whose offset is the ancilla bit.  Approximate spectra
    # leak some mass outside it; the block is renormalized either way.
    block = (1 << (layout.num_qubits - 1)) + np.arange(1 << layout.data_qubits)
    amps = collapsed.amps[block]
    block_mass = float(np.sum(np.abs(amps) ** 2))
    if exact_spectrum and 1.0 - block_mass > UNCOMPUTE_ATOL:
        raise PipelineInvariantError(
            f"stray population outside data block: {1.0 - block_mass:.3e}"
        )
    if block_mass < 1e-12:
        raise ZeroProbabilityOutcome("no population left on clean work registers")
    amps = amps / np.sqrt(block_mass)
    if np.max(np.abs(amps.imag)) > UNCOMPUTE_ATOL:
        raise PipelineInvariantError("post-selected amplitudes should be real")
    output_amps = amps.real.copy()

    try:
        _, expected = classical_pca_oracle(hin, config.tau)
    except AllComponentsFiltered:
        expected = None

    shots = counts = None
    if config.mode == "sampled":
        raw = sample(state, config.shots, config.seed)
        anc_shift = layout.num_qubits - 1
        data_mask = (1 << layout.data_qubits) - 1
        counts = {}
        for idx, c in raw.items():
            if (idx >> anc_shift) & 1:
                key = idx & data_mask
                counts[key] = counts.get(key, 0) + c
        accepted = sum(counts.values())
        if accepted == 0:
            raise PipelineInvariantError("no shot landed on the post-selected ancilla")
        output_amps = np.sqrt(
            np.array([counts.get(x, 0) for x in range(1 << layout.data_qubits)]) / accepted
        )
        shots = config.shots

    fid = 0.0 if expected is None else fidelity(output_amps, expected)

    second = second_phase_estimation(collapsed, pe_spec, layout)
    histogram = lambda_register_histogram(second, layout)

    result = QpcaResult(
        success_prob=success_prob,
        output_amps=output_amps,
        kept_count=len(kept_eigenvalues),
        kept_eigenvalues=tuple(kept_eigenvalues),
        lambda_histogram=histogram,
        fidelity=fid,
        total_gates=cost_proposed(config.n_bits, layout.data_qubits).total,
        layout=layout,
        shots=shots,
        counts=counts,
    )
    if not 0.0 < result.success_prob <= 1.0:
        raise PipelineInvariantError(f"success probability {result.success_prob} out of range")
    if result.kept_count > hin.rank:
        raise PipelineInvariantError("kept more components than the matrix rank")
    return result
