"""Independent reference implementations used as test oracles.

Everything here is deliberately written the slow, obvious way (explicit
loops, exact rational arithmetic) so that agreement with the package is
evidence, not tautology.
"""

from fractions import Fraction

import numpy as np


def dense_operator(op, num_qubits: int) -> np.ndarray:
    """Full 2**Q x 2**Q matrix of a GateOp, by basis-state enumeration."""
    dim = 1 << num_qubits
    k = len(op.targets)
    full = np.zeros((dim, dim), dtype=complex)
    for src in range(dim):
        bits = [(src >> (num_qubits - 1 - q)) & 1 for q in range(num_qubits)]
        if any(bits[q] != pol for q, pol in op.controls):
            full[src, src] = 1.0
            continue
        col = 0
        for t in op.targets:
            col = (col << 1) | bits[t]
        for row_sub in range(1 << k):
            amp = op.matrix[row_sub, col]
            if amp == 0:
                continue
            new_bits = list(bits)
            for i, t in enumerate(op.targets):
                new_bits[t] = (row_sub >> (k - 1 - i)) & 1
            dst = 0
            for b in new_bits:
                dst = (dst << 1) | b
            full[dst, src] = amp
    return full


def dft_matrix(num_qubits: int) -> np.ndarray:
    """Discrete Fourier matrix F[j, k] = w^(jk) / sqrt(N), element by element."""
    size = 1 << num_qubits
    out = np.empty((size, size), dtype=complex)
    for j in range(size):
        for k in range(size):
            out[j, k] = np.exp(2j * np.pi * j * k / size) / np.sqrt(size)
    return out


def random_unitary(rng, dim: int) -> np.ndarray:
    """Haar-ish unitary from the QR decomposition of a complex Gaussian."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_state(rng, num_qubits: int) -> np.ndarray:
    v = rng.standard_normal(1 << num_qubits) + 1j * rng.standard_normal(1 << num_qubits)
    return v / np.linalg.norm(v)


def newton_reciprocal_fraction(lam: int, iters: int, frac_bits: int) -> int:
    """Exact-rational Newton reciprocal, rounded once at the end.

    Returns the raw fixed-point integer round(z_p * 2**frac_bits), with the
    same power-of-two seed the package uses.  ``round`` on a Fraction rounds
    half to even, matching float rounding semantics.
    """
    if lam < 1:
        raise ValueError("lam must be a positive integer")
    seed_exp = (lam - 1).bit_length()  # ceil(log2(lam)) for integers
    z = Fraction(1, 1 << seed_exp)
    for _ in range(iters):
        z = 2 * z - z * z * lam
    return round(z * (1 << frac_bits))


def random_integer_spectrum_matrix(rng, dim: int, n_bits: int, tau: float):
    """Random symmetric matrix with integer eigenvalues in [0, 2**n_bits),
    at least one of them above tau.  Returns (matrix, eigenvalues)."""
    top = 1 << n_bits
    while True:
        lams = rng.integers(0, top, size=dim)
        if lams.max() > tau and lams.max() > 0:
            break
    g = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.diagonal(r))
    mat = (q * lams) @ q.T
    return 0.5 * (mat + mat.T), np.sort(lams)[::-1].astype(float)
