"""Dense statevector simulator: gates, circuits, measurement, post-selection.

Conventions
-----------
Qubit 0 is the most significant bit of a basis-state index: with Q qubits,
basis state |b0 b1 ... b_{Q-1}> lives at index sum_i b_i * 2**(Q-1-i).  This
matches circuit diagrams read top to bottom, with qubit 0 on the top wire.

States are immutable; every operation returns a fresh ``StateVector``.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

UNITARY_ATOL = 1e-10      # max |M^dag M - I| allowed for a gate matrix
NORM_ATOL = 1e-9          # statevector norm drift tolerated after an operation
MIN_OUTCOME_PROB = 1e-12  # below this a post-selection outcome counts as impossible


class SimulationError(Exception):
    """Base class for simulator errors."""


class NonUnitaryMatrixError(SimulationError):
    """Gate matrix failed the unitarity check."""


class ZeroProbabilityOutcome(SimulationError):
    """Requested measurement outcome has numerically zero probability."""


class StateVector:
    """Normalized vector of 2**num_qubits complex amplitudes.

    The amplitude array is validated (power-of-two length, finite entries,
    unit norm within ``NORM_ATOL``) and frozen at construction.
    """

    __slots__ = ("num_qubits", "_amps")

    def __init__(self, amps: Iterable[complex]):
        arr = np.array(amps, dtype=np.complex128).reshape(-1)
        q = arr.size.bit_length() - 1
        if arr.size < 2 or (1 << q) != arr.size:
            raise ValueError(f"amplitude count {arr.size} is not a power of two >= 2")
        if not np.all(np.isfinite(arr)):
            raise ValueError("state contains non-finite amplitudes")
        nrm = float(np.linalg.norm(arr))
        if abs(nrm - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {nrm!r} differs from 1 by more than {NORM_ATOL}")
        arr.setflags(write=False)
        self.num_qubits = q
        self._amps = arr

    @property
    def amps(self) -> np.ndarray:
        """Read-only amplitude array, indexed by basis state."""
        return self._amps

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        """|00...0> on ``num_qubits`` qubits."""
        return cls.basis(num_qubits, 0)

    @classmethod
    def basis(cls, num_qubits: int, index: int) -> "StateVector":
        if num_qubits < 1:
            raise ValueError("need at least one qubit")
        if not 0 <= index < (1 << num_qubits):
            raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
        arr = np.zeros(1 << num_qubits, dtype=np.complex128)
        arr[index] = 1.0
        return cls(arr)

    def probabilities(self) -> np.ndarray:
        return np.abs(self._amps) ** 2

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"


def _normalize_controls(controls) -> tuple[tuple[int, int], ...]:
    out = []
    for c in controls:
        if isinstance(c, (int, np.integer)):
            q, pol = int(c), 1
        else:
            q, pol = int(c[0]), int(c[1])
        if pol not in (0, 1):
            raise ValueError(f"control polarity must be 0 or 1, got {pol}")
        out.append((q, pol))
    return tuple(out)


def _unitarity_defect(m: np.ndarray) -> float:
    # Permutation matrices (the large filter unitaries) pass a cheap
    # structural check; everything else pays for the full product.
    nz = np.abs(m) > UNITARY_ATOL
    if np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1):
        if np.max(np.abs(m[nz] - 1.0)) < 1e-12:
            return 0.0
    gram = m.conj().T @ m
    return float(np.max(np.abs(gram - np.eye(m.shape[0]))))


class GateOp:
    """A k-qubit unitary acting on ``targets``, optionally controlled.

    ``controls`` is a sequence of (qubit, polarity) pairs; polarity 1 fires
    on |1>, polarity 0 on |0>.  Bare qubit indices mean polarity 1.  The
    matrix is checked for unitarity at construction.
    """

    __slots__ = ("matrix", "targets", "controls", "label")

    def __init__(self, matrix, targets, controls=(), label: str | None = None):
        if isinstance(targets, (int, np.integer)):
            targets = (int(targets),)
        targets = tuple(int(t) for t in targets)
        controls = _normalize_controls(controls)
        m = np.array(matrix, dtype=np.complex128)
        k = len(targets)
        if k < 1:
            raise ValueError("gate needs at least one target qubit")
        if m.ndim != 2 or m.shape != (1 << k, 1 << k):
            raise ValueError(f"matrix shape {m.shape} does not match {k} target qubit(s)")
        defect = _unitarity_defect(m)
        if defect > UNITARY_ATOL:
            raise NonUnitaryMatrixError(f"matrix deviates from unitarity by {defect:.3e}")
        touched = list(targets) + [q for q, _ in controls]
        if len(set(touched)) != len(touched):
            raise ValueError(f"targets and controls overlap: {touched}")
        if min(touched) < 0:
            raise ValueError(f"negative qubit index in {touched}")
        m.setflags(write=False)
        self.matrix = m
        self.targets = targets
        self.controls = controls
        self.label = label

    def dagger(self) -> "GateOp":
        """Inverse gate: conjugate-transposed matrix, same wiring."""
        return GateOp(self.matrix.conj().T, self.targets, self.controls, self.label)

    def remap(self, qubit_map: Sequence[int]) -> "GateOp":
        """Rewire the gate through ``qubit_map`` (old index -> new index)."""
        return GateOp(
            self.matrix,
            tuple(qubit_map[t] for t in self.targets),
            tuple((qubit_map[q], pol) for q, pol in self.controls),
            self.label,
        )

    def max_qubit(self) -> int:
        return max(list(self.targets) + [q for q, _ in self.controls])

    def __repr__(self) -> str:
        name = self.label or f"{1 << len(self.targets)}x{1 << len(self.targets)}"
        return f"GateOp({name}, targets={self.targets}, controls={self.controls})"


class Circuit:
    """Ordered gate list on a fixed number of qubits."""

    __slots__ = ("num_qubits", "_ops")

    def __init__(self, num_qubits: int, ops: Iterable[GateOp] = ()):
        if num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        self.num_qubits = int(num_qubits)
        self._ops: list[GateOp] = []
        self.extend(ops)

    @property
    def ops(self) -> tuple[GateOp, ...]:
        return tuple(self._ops)

    def append(self, op: GateOp) -> "Circuit":
        if op.max_qubit() >= self.num_qubits:
            raise ValueError(
                f"gate touches qubit {op.max_qubit()} but circuit has {self.num_qubits} qubits"
            )
        self._ops.append(op)
        return self

    def extend(self, ops: Iterable[GateOp]) -> "Circuit":
        for op in ops:
            self.append(op)
        return self

    def inverse(self) -> "Circuit":
        """Adjoint circuit: reversed order, each gate replaced by its dagger."""
        return Circuit(self.num_qubits, [op.dagger() for op in reversed(self._ops)])

    def remap(self, qubit_map: Sequence[int], num_qubits: int) -> "Circuit":
        """Embed into a wider register, sending old qubit i to qubit_map[i]."""
        if len(qubit_map) != self.num_qubits:
            raise ValueError("qubit_map length must match circuit width")
        return Circuit(num_qubits, [op.remap(qubit_map) for op in self._ops])

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.num_qubits != self.num_qubits:
            raise ValueError("cannot concatenate circuits of different widths")
        return Circuit(self.num_qubits, list(self._ops) + list(other._ops))

    def __len__(self) -> int:
        return len(self._ops)

    def __iter__(self):
        return iter(self._ops)


def apply(state: StateVector, op: GateOp) -> StateVector:
    """Apply one gate and return the new state."""
    q = state.num_qubits
    if op.max_qubit() >= q:
        raise ValueError(f"gate touches qubit {op.max_qubit()} but state has {q} qubits")
    k = len(op.targets)
    target_set = set(op.targets)
    rest = [i for i in range(q) if i not in target_set]
    perm = list(op.targets) + rest

    amps = state.amps.copy()
    tensor = amps.reshape((2,) * q).transpose(perm)
    index = [slice(None)] * q
    for cq, pol in op.controls:
        index[k + rest.index(cq)] = pol
    index = tuple(index)
    sub = tensor[index]
    flat = np.ascontiguousarray(sub).reshape(1 << k, -1)
    tensor[index] = (op.matrix @ flat).reshape(sub.shape)
    return StateVector(amps)


def run(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply every gate of ``circuit`` in order."""
    if circuit.num_qubits != state.num_qubits:
        raise ValueError(
            f"circuit width {circuit.num_qubits} does not match state width {state.num_qubits}"
        )
    for op in circuit:
        state = apply(state, op)
    return state


def post_select(state: StateVector, qubit: int, outcome: int) -> tuple[float, StateVector]:
    """Project onto ``qubit == outcome`` and renormalize.

    Returns (probability of the outcome, collapsed state).  Raises
    ``ZeroProbabilityOutcome`` when the outcome probability is below
    ``MIN_OUTCOME_PROB``.
    """
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome}")
    if not 0 <= qubit < state.num_qubits:
        raise ValueError(f"qubit {qubit} out of range")
    shift = state.num_qubits - 1 - qubit
    bits = (np.arange(state.amps.size) >> shift) & 1
    mask = bits == outcome
    prob = float(np.sum(np.abs(state.amps[mask]) ** 2))
    if prob < MIN_OUTCOME_PROB:
        raise ZeroProbabilityOutcome(
            f"outcome {outcome} on qubit {qubit} has probability {prob:.3e}"
        )
    collapsed = np.where(mask, state.amps, 0.0) / math.sqrt(prob)
    return prob, StateVector(collapsed)


def sample(state: StateVector, shots: int, seed: int) -> dict[int, int]:
    """Multinomial measurement counts over basis states; deterministic per seed."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = state.probabilities()
    p = p / p.sum()
    counts = np.random.default_rng(seed).multinomial(shots, p)
    return {int(i): int(c) for i, c in enumerate(counts) if c}


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Full 2**Q x 2**Q matrix of a circuit, built column by column."""
    dim = 1 << circuit.num_qubits
    cols = [run(StateVector.basis(circuit.num_qubits, i), circuit).amps for i in range(dim)]
    return np.column_stack(cols)


# -- standard gates ----------------------------------------------------------

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def hadamard(qubit: int) -> GateOp:
    return GateOp(_H, (qubit,), label="H")


def pauli_x(qubit: int, controls=()) -> GateOp:
    return GateOp(_X, (qubit,), controls, label="X")


def ry(theta: float, qubit: int, controls=()) -> GateOp:
    """Real rotation [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return GateOp([[c, -s], [s, c]], (qubit,), controls, label=f"Ry({theta:.4f})")


def phase(theta: float, qubit: int, controls=()) -> GateOp:
    return GateOp([[1, 0], [0, np.exp(1j * theta)]], (qubit,), controls, label=f"P({theta:.4f})")


def cphase(theta: float, control: int, target: int) -> GateOp:
    return phase(theta, target, controls=((control, 1),))


def swap(a: int, b: int) -> GateOp:
    m = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    return GateOp(m, (a, b), label="SWAP")
