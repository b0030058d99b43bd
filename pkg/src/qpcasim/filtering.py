"""Eigenvalue-threshold filtering in fixed point.

The filter maps an n-bit eigenvalue register value lambda to an n-bit
shrinkage coefficient y = (1 - tau/lambda) clamped below at 0, computed via a
Newton-iteration reciprocal.  Components with lambda <= tau get y = 0 and are
discarded by the pipeline's ancilla flip; everything else gets y > 0.  Only
the zero/nonzero distinction feeds the pipeline (the y register is
uncomputed), but y values are still produced at full register precision so
the table can be checked against the real-valued shrinkage map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .layout import RegisterLayout
from .sim import Circuit, GateOp, cphase
from .builders import build_qft


class ZeroEigenvalue(Exception):
    """Reciprocal of a zero (or negative) eigenvalue requested."""


@dataclass(frozen=True)
class FixedPoint:
    """Unsigned fixed-point number: value = raw / 2**frac, held in ``bits`` bits."""

    raw: int
    bits: int
    frac: int = 0

    def __post_init__(self):
        if self.bits < 1:
            raise ValueError("bits must be >= 1")
        if not 0 <= self.frac <= self.bits:
            raise ValueError(f"frac {self.frac} must lie in [0, bits]")
        if not 0 <= self.raw < (1 << self.bits):
            raise ValueError(f"raw value {self.raw} does not fit in {self.bits} bits")

    @property
    def value(self) -> float:
        return self.raw / (1 << self.frac)

    @classmethod
    def integer(cls, value: int, bits: int) -> "FixedPoint":
        return cls(raw=int(value), bits=bits, frac=0)

    @classmethod
    def from_real(cls, x: float, frac: int, bits: int | None = None) -> "FixedPoint":
        """Round ``x`` to the nearest multiple of 2**-frac."""
        raw = round(float(x) * (1 << frac))
        if bits is None:
            bits = max(frac + 1, raw.bit_length())
        return cls(raw=raw, bits=bits, frac=frac)


def default_newton_iters(frac_bits: int) -> int:
    """Iterations needed for ``frac_bits`` correct bits: ceil(log2(f)) + 2.

    Newton's method doubles the number of correct bits per step and the
    power-of-two seed starts with at least one, so log2(f) steps reach f bits
    and two extra steps absorb the seed and rounding slack.
    """
    if frac_bits < 1:
        raise ValueError("frac_bits must be >= 1")
    return math.ceil(math.log2(frac_bits)) + 2


def newton_reciprocal(lam, iters: int, frac_bits: int | None = None) -> FixedPoint:
    """Approximate 1/lam with Newton's iteration z <- 2z - z*z*lam.

    ``lam`` may be a FixedPoint or a plain number.  The seed is the largest
    power of two not exceeding 1/lam, so convergence is monotone from below
    after the first step.  The result is rounded once, at the end, to
    ``frac_bits`` fractional bits (default: lam.bits), giving
    |result - 1/lam| <= 2**-frac_bits for the default iteration count.
    """
    if isinstance(lam, FixedPoint):
        lam_value = lam.value
        if frac_bits is None:
            frac_bits = lam.bits
    else:
        lam_value = float(lam)
        if frac_bits is None:
            raise ValueError("frac_bits is required when lam is not a FixedPoint")
    if lam_value <= 0.0:
        raise ZeroEigenvalue(f"cannot take reciprocal of {lam_value}")
    if iters < 1:
        raise ValueError("iters must be >= 1")

    z = 2.0 ** -math.ceil(math.log2(lam_value))
    for _ in range(iters):
        z = 2.0 * z - z * z * lam_value
    raw = round(z * (1 << frac_bits))
    bits = max(frac_bits + 1, raw.bit_length())  # z can reach exactly 1.0 at lam = 1
    return FixedPoint(raw=raw, bits=bits, frac=frac_bits)


def shrink(lam: float, tau: float) -> float:
    """Real-valued shrinkage coefficient max(1 - tau/lam, 0); zero at lam = 0."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    if lam == 0:
        return 0.0
    return max(1.0 - tau / lam, 0.0)


@dataclass(frozen=True)
class FilterParams:
    """Threshold and register width for the filter.

    ``tau`` is rounded to the register grid (``n_bits`` fractional bits) and
    the kept set is decided against the rounded value, mirroring what an
    n-bit comparator would see.
    """

    tau: float
    n_bits: int
    newton_iters: int | None = None

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.n_bits < 1:
            raise ValueError("n_bits must be >= 1")
        if self.newton_iters is not None and self.newton_iters < 1:
            raise ValueError("newton_iters must be >= 1")

    @property
    def frac_bits(self) -> int:
        return self.n_bits

    @property
    def iterations(self) -> int:
        if self.newton_iters is not None:
            return self.newton_iters
        return default_newton_iters(self.frac_bits)

    @property
    def tau_fixed(self) -> FixedPoint:
        return FixedPoint.from_real(self.tau, self.frac_bits)


@dataclass(frozen=True, eq=False)
class FilterTable:
    """Lookup lambda_raw -> y_raw over all 2**n_bits register values.

    Invariants checked at construction: y == 0 exactly on lambda <= rounded
    tau, and y is nondecreasing on the kept side (larger eigenvalues shrink
    less).
    """

    params: FilterParams
    y_raws: tuple[int, ...]

    def __post_init__(self):
        n = self.params.n_bits
        if len(self.y_raws) != (1 << n):
            raise ValueError(f"table needs {1 << n} entries, got {len(self.y_raws)}")
        tau_fx = self.params.tau_fixed.value
        last_kept = 0
        for lam, y in enumerate(self.y_raws):
            if not 0 <= y < (1 << n):
                raise ValueError(f"y value {y} does not fit the {n}-bit register")
            if (y > 0) != (lam > tau_fx):
                raise ValueError(
                    f"threshold dichotomy violated at lambda={lam}: y={y}, tau={tau_fx}"
                )
            if y > 0:
                if y < last_kept:
                    raise ValueError(f"y not monotone at lambda={lam}")
                last_kept = y

    @property
    def frac_bits(self) -> int:
        return self.params.frac_bits

    def y_raw(self, lam_raw: int) -> int:
        return self.y_raws[lam_raw]

    def y_value(self, lam_raw: int) -> float:
        return self.y_raws[lam_raw] / (1 << self.frac_bits)

    @property
    def kept_values(self) -> tuple[int, ...]:
        return tuple(lam for lam, y in enumerate(self.y_raws) if y > 0)

    def __len__(self) -> int:
        return len(self.y_raws)


def build_filter_table(params: FilterParams) -> FilterTable:
    """Tabulate y(lambda) = 1 - tau/lambda over the register, in fixed point.

    The lambda <= tau side is routed straight to 0 (no reciprocal needed);
    the kept side uses the Newton reciprocal and is clamped into [1, 2**n - 1]
    so that rounding can neither drop a kept component to zero nor overflow
    the y register.
    """
    n = params.n_bits
    f = params.frac_bits
    tau_fx = params.tau_fixed.value
    y_raws = []
    for lam in range(1 << n):
        if lam <= tau_fx:
            y_raws.append(0)
            continue
        z = newton_reciprocal(FixedPoint.integer(lam, n), params.iterations, frac_bits=f)
        y = (1.0 - tau_fx * z.value) * (1 << f)
        y_raws.append(min((1 << f) - 1, max(1, round(y))))
    return FilterTable(params=params, y_raws=tuple(y_raws))


def exact_shrink_table(params: FilterParams) -> FilterTable:
    """Same kept-set semantics with y taken from the real shrinkage map.

    Substituting this table for the Newton one isolates fixed-point error to
    the reciprocal path; the pipeline output must not change at all, since
    only the zero/nonzero pattern of y survives uncomputation.
    """
    n = params.n_bits
    f = params.frac_bits
    tau_fx = params.tau_fixed.value
    y_raws = []
    for lam in range(1 << n):
        s = shrink(float(lam), tau_fx) if lam else 0.0
        if s <= 0.0:
            y_raws.append(0)
        else:
            y_raws.append(min((1 << f) - 1, max(1, math.ceil(s * (1 << f)))))
    return FilterTable(params=params, y_raws=tuple(y_raws))


def build_filter_unitary(table: FilterTable, layout: RegisterLayout) -> GateOp:
    """Permutation gate |c>_y |lambda> -> |c + y(lambda) mod 2**n>_y |lambda>.

    Acting on the joint y+lambda register; the table is compiled in as
    classical data, so no work qubits are consumed.
    """
    n = table.params.n_bits
    if len(layout.y_reg) != n:
        raise ValueError(
            f"table built for {n}-bit registers but layout has {len(layout.y_reg)}"
        )
    size = 1 << n
    dim = size * size
    perm = np.zeros((dim, dim))
    for lam in range(size):
        y = table.y_raw(lam)
        for c in range(size):
            src = c * size + lam
            dst = ((c + y) % size) * size + lam
            perm[dst, src] = 1.0
    return GateOp(perm, layout.y_reg + layout.lambda_reg, label="U_lambda_tau")


def build_qft_adder(width: int) -> Circuit:
    """In-place Fourier adder |a>|b> -> |a>|a + b mod 2**width>.

    Qubits 0..width-1 hold a, width..2*width-1 hold b.  QFT on b, one
    controlled phase per interacting bit pair, inverse QFT.  Width is capped
    where exhaustive verification stays cheap.
    """
    if not 1 <= width <= 6:
        raise ValueError("width must lie in [1, 6]")
    a = tuple(range(width))
    b = tuple(range(width, 2 * width))
    circ = Circuit(2 * width)
    circ.extend(build_qft(width).remap(b, 2 * width))
    for ja in range(width):  # a-bit of weight 2**ja sits on qubit a[width-1-ja]
        for lb in range(width - ja):
            angle = 2 * math.pi * (1 << (ja + lb)) / (1 << width)
            circ.append(cphase(angle, control=a[width - 1 - ja], target=b[width - 1 - lb]))
    circ.extend(build_qft(width).inverse().remap(b, 2 * width))
    return circ


def count_filter_gates(n_bits: int) -> int:
    """Elementary-gate budget of the filter block: 16 * n_bits.

    Eight QFT-arithmetic passes over the n-qubit working registers, each
    costing 2n elementary operations.
    """
    if n_bits < 1:
        raise ValueError("n_bits must be >= 1")
    return 16 * n_bits
