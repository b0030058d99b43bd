"""Gate and qubit budgets: threshold-filter circuit vs two-stage baseline."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping


@dataclass(frozen=True, eq=False)
class CostReport:
    n: int
    per_block: Mapping[str, int]
    total: int
    qubits: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if any(v < 0 for v in self.per_block.values()):
            raise ValueError("block counts must be nonnegative")
        if self.total != sum(self.per_block.values()):
            raise ValueError("total does not match the sum of block counts")


def cost_proposed(n: int, m: int) -> CostReport:
    """Budget of the in-line filter design: 3n^2 + 33n gates on 1 + 2n + m qubits."""
    blocks = {
        "PE1": n * n,
        "filter": 16 * n,
        "CU": n,
        "Udagger": n * n + 16 * n,
        "PE2": n * n,
    }
    return CostReport(n=n, per_block=blocks, total=sum(blocks.values()), qubits=1 + 2 * n + m)


def cost_baseline(n: int, m: int) -> CostReport:
    """Budget of the two-stage rotation design: 5n^2 + 98n gates, same qubits."""
    blocks = {
        "PE x3": 3 * n * n,
        "U_sigma_tau": 24 * n,
        "U_sigma_tau_prime": 24 * n,
        "Ry_alpha x2": 2 * n,
        "Udagger x2": 2 * n * n + 48 * n,
    }
    return CostReport(n=n, per_block=blocks, total=sum(blocks.values()), qubits=1 + 2 * n + m)


def gate_ratio(n: int) -> float:
    """proposed/baseline gate-count ratio; rises toward 3/5 as n grows."""
    return cost_proposed(n, 1).total / cost_baseline(n, 1).total
