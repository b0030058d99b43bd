"""Circuit builders: QFT, phase estimation, binary-tree state preparation."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .sim import Circuit, GateOp, cphase, hadamard, ry, swap


class SpectralPrecisionWarning(UserWarning):
    """Eigenvalues fall outside, or between, exact register values."""


@dataclass(frozen=True, eq=False)
class PhaseEstimationSpec:
    """A real symmetric matrix whose eigenvalues feed an n-bit register.

    Phase estimation with ``eig_bits`` register qubits writes lambda as a
    binary fraction of 2**eig_bits, so integer eigenvalues in
    [0, 2**eig_bits) land exactly on register basis states.
    """

    matrix: np.ndarray
    eig_bits: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix shape {m.shape} is not square")
        k = m.shape[0].bit_length() - 1
        if (1 << k) != m.shape[0]:
            raise ValueError(f"matrix dimension {m.shape[0]} is not a power of two")
        if np.max(np.abs(m - m.T)) > 1e-10:
            raise ValueError("matrix is not symmetric")
        if self.eig_bits < 1:
            raise ValueError("eig_bits must be >= 1")
        eigvals, eigvecs = np.linalg.eigh(m)
        if eigvals.min() < -1e-9 or eigvals.max() >= (1 << self.eig_bits):
            warnings.warn(
                f"eigenvalues span [{eigvals.min():.4g}, {eigvals.max():.4g}], outside "
                f"[0, {1 << self.eig_bits}); register readout will wrap",
                SpectralPrecisionWarning,
                stacklevel=2,
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_eigvals", eigvals)
        object.__setattr__(self, "_eigvecs", eigvecs)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_target_qubits(self) -> int:
        return self.dim.bit_length() - 1

    @property
    def scale(self) -> int:
        return 1 << self.eig_bits

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eigvals.copy()


def _exp_matrix(spec: PhaseEstimationSpec, power: int) -> np.ndarray:
    phases = np.exp(2j * np.pi * spec._eigvals * (1 << power) / spec.scale)
    return (spec._eigvecs * phases) @ spec._eigvecs.T


def matrix_exponential_unitary(spec: PhaseEstimationSpec, power: int) -> GateOp:
    """exp(2*pi*i * A * 2**power / 2**eig_bits) as a gate on the data qubits."""
    if not 0 <= power < spec.eig_bits:
        raise ValueError(f"power must lie in [0, {spec.eig_bits}), got {power}")
    return GateOp(
        _exp_matrix(spec, power),
        tuple(range(spec.num_target_qubits)),
        label=f"exp(2pi.i.A.2^{power}/{spec.scale})",
    )


def build_qft(num_qubits: int) -> Circuit:
    """Fourier transform circuit whose matrix is F[j,k] = w^(jk)/sqrt(N)."""
    circ = Circuit(num_qubits)
    for i in range(num_qubits):
        circ.append(hadamard(i))
        for j in range(i + 1, num_qubits):
            circ.append(cphase(2 * math.pi / (1 << (j - i + 1)), control=j, target=i))
    for i in range(num_qubits // 2):
        circ.append(swap(i, num_qubits - 1 - i))
    return circ


def build_phase_estimation(
    spec: PhaseEstimationSpec,
    lam_qubits,
    target_qubits,
    num_qubits: int | None = None,
) -> Circuit:
    """Phase estimation writing eigenvalues of ``spec.matrix`` into ``lam_qubits``.

    On input |0...0>|u_k> the circuit produces |lambda_k>|u_k> exactly when
    lambda_k is an integer in [0, 2**eig_bits); superpositions of eigenvectors
    come out entangled with their eigenvalue register states.
    """
    lam_qubits = tuple(int(q) for q in lam_qubits)
    target_qubits = tuple(int(q) for q in target_qubits)
    if len(lam_qubits) != spec.eig_bits:
        raise ValueError(
            f"{len(lam_qubits)} register qubits given but spec asks for {spec.eig_bits}"
        )
    if (1 << len(target_qubits)) != spec.dim:
        raise ValueError(
            f"{len(target_qubits)} target qubits cannot hold a dimension-{spec.dim} matrix"
        )
    if set(lam_qubits) & set(target_qubits):
        raise ValueError("register and target qubits overlap")
    if num_qubits is None:
        num_qubits = max(lam_qubits + target_qubits) + 1

    circ = Circuit(num_qubits)
    for lq in lam_qubits:
        circ.append(hadamard(lq))
    n = spec.eig_bits
    for i, lq in enumerate(lam_qubits):
        # register qubit i carries bit weight 2**(n-1-i)
        circ.append(
            GateOp(
                _exp_matrix(spec, n - 1 - i),
                target_qubits,
                controls=((lq, 1),),
                label=f"c-exp(2pi.i.A.2^{n - 1 - i}/{spec.scale})",
            )
        )
    circ.extend(build_qft(n).inverse().remap(lam_qubits, num_qubits))
    return circ


@dataclass(eq=False)
class StatePrepTree:
    """Masses and rotation angles of the amplitude binary tree.

    ``node_masses[l]`` holds the 2**l subtree masses at depth l (depth 0 is
    the root, depth m the squared leaf amplitudes).  ``level_angles[l]``
    drives the rotations splitting depth-l nodes; the deepest level carries
    signed angles so negative leaf amplitudes come out of real rotations.
    """

    leaf_values: np.ndarray
    node_masses: list[np.ndarray]
    level_angles: list[np.ndarray]


def state_prep_tree(vector) -> StatePrepTree:
    v = np.array(vector, dtype=np.float64).reshape(-1)
    m = v.size.bit_length() - 1
    if v.size < 2 or (1 << m) != v.size:
        raise ValueError(f"vector length {v.size} is not a power of two >= 2")
    nrm = float(np.linalg.norm(v))
    if nrm < 1e-12:
        raise ValueError("cannot prepare the zero vector")
    v = v / nrm

    masses = [v * v]
    for _ in range(m):
        masses.append(masses[-1][0::2] + masses[-1][1::2])
    masses.reverse()  # masses[l] now has 2**l entries

    angles = []
    for level in range(m):
        child = masses[level + 1]
        if level < m - 1:
            theta = 2.0 * np.arctan2(np.sqrt(child[1::2]), np.sqrt(child[0::2]))
        else:
            theta = 2.0 * np.arctan2(v[1::2], v[0::2])
        angles.append(theta)
    return StatePrepTree(leaf_values=v, node_masses=masses, level_angles=angles)


def build_state_prep(vector, qubits=None, num_qubits: int | None = None) -> Circuit:
    """Circuit taking |0...0> to the normalized ``vector`` on ``qubits``.

    One multi-controlled Ry per binary-tree node, controls spelling out the
    path from the root.  Zero-angle rotations are dropped, so preparing a
    basis state costs no gates.
    """
    tree = state_prep_tree(vector)
    m = len(tree.level_angles)
    if qubits is None:
        qubits = tuple(range(m))
    else:
        qubits = tuple(int(q) for q in qubits)
        if len(qubits) != m:
            raise ValueError(f"need {m} qubits for {1 << m} amplitudes, got {len(qubits)}")
    if num_qubits is None:
        num_qubits = max(qubits) + 1

    circ = Circuit(num_qubits)
    for level, thetas in enumerate(tree.level_angles):
        for node, theta in enumerate(thetas):
            if theta == 0.0:
                continue
            controls = tuple(
                (qubits[b], (node >> (level - 1 - b)) & 1) for b in range(level)
            )
            circ.append(ry(float(theta), qubits[level], controls=controls))
    return circ
