"""
Statevector simulator basics
============================

States, gates, controls, post-selection, and sampling.  Qubit 0 is the most
significant bit of the basis index, so on three qubits |100> sits at index 4.
"""

import numpy as np

from qpcasim import (
    Circuit,
    StateVector,
    apply,
    hadamard,
    pauli_x,
    post_select,
    run,
    ry,
    sample,
)

# A Hadamard puts one qubit into an equal superposition.
state = apply(StateVector.zero(1), hadamard(0))
print("H|0> =", np.round(state.amps, 4))

# Controls take (qubit, polarity) pairs; polarity 0 fires on |0>.
bell = run(StateVector.zero(2), Circuit(2, [hadamard(0), pauli_x(1, controls=((0, 1),))]))
print("Bell state:", np.round(bell.amps, 4))

# Ry rotations are real, which keeps every amplitude in this package real.
theta = 2 * np.arctan2(0.8, 0.6)
state = apply(StateVector.zero(1), ry(theta, 0))
print("Ry gives [0.6, 0.8]:", np.round(state.amps, 4))

# Post-selection projects one qubit onto an outcome and renormalizes.
prob, collapsed = post_select(bell, 0, 1)
print(f"P(qubit 0 = 1) = {prob:.4f}, collapsed =", np.round(collapsed.amps, 4))

# Sampling draws multinomial counts; the seed makes runs reproducible.
counts = sample(bell, shots=8192, seed=1)
print("8192 shots of the Bell state:", counts)
