import math

import numpy as np
import pytest

from helpers import dense_operator, random_state, random_unitary
from qpcasim import (
    Circuit,
    GateOp,
    NonUnitaryMatrixError,
    StateVector,
    ZeroProbabilityOutcome,
    apply,
    circuit_unitary,
    cphase,
    hadamard,
    pauli_x,
    post_select,
    run,
    ry,
    sample,
    swap,
)


class TestStateVector:
    def test_zero_state(self):
        s = StateVector.zero(3)
        assert s.num_qubits == 3
        assert s.amps[0] == 1.0
        assert np.all(s.amps[1:] == 0.0)

    def test_basis_state_index(self):
        s = StateVector.basis(3, 5)
        assert s.amps[5] == 1.0

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError, match="power of two"):
            StateVector([1.0, 0.0, 0.0])

    def test_rejects_bad_norm(self):
        with pytest.raises(ValueError, match="norm"):
            StateVector([1.0, 1.0])

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            StateVector([np.nan, 0.0])

    def test_amps_frozen(self):
        s = StateVector.zero(2)
        with pytest.raises(ValueError):
            s.amps[0] = 0.5

    def test_probabilities_sum_to_one(self):
        rng = np.random.default_rng(11)
        s = StateVector(random_state(rng, 4))
        assert abs(s.probabilities().sum() - 1.0) < 1e-12

    def test_basis_index_out_of_range(self):
        with pytest.raises(ValueError):
            StateVector.basis(2, 4)


class TestGateOp:
    def test_rejects_non_unitary(self):
        with pytest.raises(NonUnitaryMatrixError):
            GateOp([[1, 0], [0, 2]], (0,))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            GateOp(np.eye(4), (0,))

    def test_rejects_target_control_overlap(self):
        with pytest.raises(ValueError, match="overlap"):
            GateOp(np.eye(2), (0,), controls=((0, 1),))

    def test_rejects_bad_polarity(self):
        with pytest.raises(ValueError, match="polarity"):
            GateOp(np.eye(2), (0,), controls=((1, 2),))

    def test_rejects_negative_index(self):
        with pytest.raises(ValueError, match="negative"):
            GateOp(np.eye(2), (-1,))

    def test_accepts_tiny_unitarity_defect(self):
        m = np.eye(2) + 1e-12
        GateOp(m, (0,))  # defect well under tolerance

    def test_large_permutation_accepted(self):
        # cyclic shift on 6 qubits; structural fast path, no Gram product
        size = 64
        perm = np.zeros((size, size))
        for i in range(size):
            perm[(i + 5) % size, i] = 1.0
        op = GateOp(perm, tuple(range(6)))
        assert op.matrix.shape == (size, size)

    def test_permutation_with_duplicate_column_rejected(self):
        m = np.zeros((4, 4))
        m[0, 0] = m[0, 1] = 1.0
        m[1, 2] = m[2, 3] = 1.0
        with pytest.raises(NonUnitaryMatrixError):
            GateOp(m, (0, 1))

    def test_dagger_inverts(self):
        rng = np.random.default_rng(5)
        op = GateOp(random_unitary(rng, 4), (0, 1))
        prod = op.matrix @ op.dagger().matrix
        assert np.max(np.abs(prod - np.eye(4))) < 1e-12

    def test_bare_int_control_means_polarity_one(self):
        op = pauli_x(1, controls=(0,))
        assert op.controls == ((0, 1),)


class TestApply:
    def test_hadamard_on_zero(self):
        s = apply(StateVector.zero(1), hadamard(0))
        assert np.allclose(s.amps, [1 / math.sqrt(2), 1 / math.sqrt(2)])

    def test_x_targets_msb_convention(self):
        # qubit 0 is the most significant bit: X on qubit 0 of |000> -> index 4
        s = apply(StateVector.zero(3), pauli_x(0))
        assert s.amps[4] == 1.0
        s = apply(StateVector.zero(3), pauli_x(2))
        assert s.amps[1] == 1.0

    def test_control_blocks_gate(self):
        s = apply(StateVector.zero(2), pauli_x(1, controls=((0, 1),)))
        assert s.amps[0] == 1.0  # control qubit is |0>, nothing happens

    def test_control_fires(self):
        s = apply(StateVector.basis(2, 2), pauli_x(1, controls=((0, 1),)))
        assert s.amps[3] == 1.0

    def test_negative_polarity_control(self):
        s = apply(StateVector.zero(2), pauli_x(1, controls=((0, 0),)))
        assert s.amps[1] == 1.0

    def test_ry_rotation(self):
        theta = 0.7365
        s = apply(StateVector.zero(1), ry(theta, 0))
        assert np.allclose(s.amps, [math.cos(theta / 2), math.sin(theta / 2)])

    def test_gate_out_of_range(self):
        with pytest.raises(ValueError, match="qubit"):
            apply(StateVector.zero(2), pauli_x(2))

    def test_matches_dense_operator(self):
        # random gates (multi-target, mixed-polarity controls) against the
        # explicit matrix built by basis enumeration
        rng = np.random.default_rng(42)
        for _ in range(40):
            q = int(rng.integers(1, 6))
            k = int(rng.integers(1, min(3, q) + 1))
            wires = list(rng.permutation(q))
            targets = tuple(wires[:k])
            n_ctrl = int(rng.integers(0, len(wires[k:]) + 1))
            controls = tuple((w, int(rng.integers(0, 2))) for w in wires[k : k + n_ctrl])
            op = GateOp(random_unitary(rng, 1 << k), targets, controls)
            vec = random_state(rng, q)
            got = apply(StateVector(vec), op).amps
            want = dense_operator(op, q) @ vec
            assert np.max(np.abs(got - want)) < 1e-12

    def test_norm_preserved(self):
        rng = np.random.default_rng(17)
        s = StateVector(random_state(rng, 5))
        for _ in range(30):
            t = int(rng.integers(0, 5))
            s = apply(s, GateOp(random_unitary(rng, 2), (t,)))
        assert abs(np.linalg.norm(s.amps) - 1.0) < 1e-12


class TestCircuit:
    def test_append_validates_width(self):
        with pytest.raises(ValueError, match="qubit"):
            Circuit(2).append(pauli_x(5))

    def test_hadamard_squares_to_identity(self):
        c = Circuit(1, [hadamard(0), hadamard(0)])
        s = run(StateVector.zero(1), c)
        assert np.max(np.abs(s.amps - [1, 0])) < 1e-12

    def test_run_width_mismatch(self):
        with pytest.raises(ValueError, match="width"):
            run(StateVector.zero(2), Circuit(3))

    def test_inverse_undoes_random_circuit(self):
        rng = np.random.default_rng(23)
        c = Circuit(4)
        for _ in range(12):
            t = int(rng.integers(0, 4))
            c.append(GateOp(random_unitary(rng, 2), (t,)))
        vec = random_state(rng, 4)
        round_trip = run(run(StateVector(vec), c), c.inverse())
        assert np.max(np.abs(round_trip.amps - vec)) < 1e-9

    def test_concatenation_equals_sequential(self):
        rng = np.random.default_rng(29)
        c1 = Circuit(3, [GateOp(random_unitary(rng, 2), (i,)) for i in range(3)])
        c2 = Circuit(3, [cphase(0.4, 0, 2), hadamard(1)])
        vec = random_state(rng, 3)
        joint = run(StateVector(vec), c1 + c2)
        stepped = run(run(StateVector(vec), c1), c2)
        assert np.array_equal(joint.amps, stepped.amps)

    def test_deterministic_replay(self):
        rng = np.random.default_rng(31)
        c = Circuit(3, [GateOp(random_unitary(rng, 2), (int(rng.integers(0, 3)),)) for _ in range(8)])
        a = run(StateVector.zero(3), c)
        b = run(StateVector.zero(3), c)
        assert np.array_equal(a.amps, b.amps)

    def test_remap_embeds_into_wider_register(self):
        c = Circuit(1, [pauli_x(0)]).remap([2], 3)
        s = run(StateVector.zero(3), c)
        assert s.amps[1] == 1.0

    def test_remap_length_mismatch(self):
        with pytest.raises(ValueError, match="qubit_map"):
            Circuit(2).remap([0], 3)

    def test_circuit_unitary_of_cnot(self):
        c = Circuit(2, [pauli_x(1, controls=((0, 1),))])
        want = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
        assert np.max(np.abs(circuit_unitary(c) - want)) < 1e-12

    def test_swap_gate(self):
        s = run(StateVector.basis(2, 2), Circuit(2, [swap(0, 1)]))
        assert s.amps[1] == 1.0


class TestPostSelect:
    def test_plus_state(self):
        s = apply(StateVector.zero(1), hadamard(0))
        prob, collapsed = post_select(s, 0, 1)
        assert abs(prob - 0.5) < 1e-12
        assert abs(collapsed.amps[1] - 1.0) < 1e-12

    def test_outcome_probabilities_sum(self):
        rng = np.random.default_rng(37)
        s = StateVector(random_state(rng, 3))
        p0, _ = post_select(s, 1, 0)
        p1, _ = post_select(s, 1, 1)
        assert abs(p0 + p1 - 1.0) < 1e-12

    def test_collapsed_state_is_normalized(self):
        rng = np.random.default_rng(41)
        s = StateVector(random_state(rng, 3))
        _, collapsed = post_select(s, 2, 1)
        assert abs(np.linalg.norm(collapsed.amps) - 1.0) < 1e-12

    def test_impossible_outcome_raises(self):
        with pytest.raises(ZeroProbabilityOutcome):
            post_select(StateVector.zero(2), 0, 1)

    def test_bad_outcome_value(self):
        with pytest.raises(ValueError, match="outcome"):
            post_select(StateVector.zero(2), 0, 2)


class TestSample:
    def test_basis_state_all_shots(self):
        assert sample(StateVector.basis(2, 3), 100, seed=0) == {3: 100}

    def test_counts_sum_to_shots(self):
        s = apply(apply(StateVector.zero(2), hadamard(0)), hadamard(1))
        counts = sample(s, 8192, seed=1)
        assert sum(counts.values()) == 8192

    def test_uniform_within_four_sigma(self):
        s = apply(apply(StateVector.zero(2), hadamard(0)), hadamard(1))
        counts = sample(s, 8192, seed=2)
        sigma = math.sqrt(8192 * 0.25 * 0.75)
        for i in range(4):
            assert abs(counts.get(i, 0) - 2048) < 4 * sigma

    def test_deterministic_per_seed(self):
        s = apply(apply(StateVector.zero(2), hadamard(0)), hadamard(1))
        assert sample(s, 500, seed=9) == sample(s, 500, seed=9)

    def test_seed_changes_counts(self):
        s = apply(apply(StateVector.zero(2), hadamard(0)), hadamard(1))
        assert sample(s, 500, seed=0) != sample(s, 500, seed=1)

    def test_rejects_zero_shots(self):
        with pytest.raises(ValueError, match="shots"):
            sample(StateVector.zero(1), 0, seed=0)
