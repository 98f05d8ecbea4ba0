"""Closed-form noiseless QFI of graph and stabilizer states.

Generator convention throughout: H = (1/2) sum_i X_i, so a product state has
QFI n and the Heisenberg limit is n**2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, partition
from .pauli import StabilizerGroup, classify_x_forms


class FormulaError(ValueError):
    """A closed form was asked for outside its domain of validity."""


@dataclass(frozen=True)
class QfiValue:
    value: float
    method: str

    def __float__(self):
        return float(self.value)


def qfi_graph(g: Graph) -> QfiValue:
    """Sum of squared open-neighbourhood class sizes."""
    g.require_no_isolated()
    rep = partition(g)
    return QfiValue(sum(v * v for v in rep.open_sizes), "graph")


def qfi_graph_lc(g: Graph) -> QfiValue:
    """QFI after the twin local Clifford: open and closed class contributions minus n."""
    g.require_no_isolated()
    rep = partition(g)
    total = sum(v * v for v in rep.open_sizes) + sum(u * u for u in rep.closed_sizes) - g.n
    return QfiValue(total, "graph_lc")


def qfi_stabilizer(s: StabilizerGroup) -> QfiValue:
    rep = classify_x_forms(s)
    if rep.has_bad_form:
        raise FormulaError(f"stabilizer group contains {rep.bad_witness}; X-pair count formula does not apply")
    # ordered off-diagonal pairs plus the n diagonal terms
    return QfiValue(2 * rep.count_xixj + s.n, "stabilizer")


def bundle_bound(n: int, k: int) -> float:
    """Lower bound n**2 / k for a graph bundled into k groups."""
    if not 1 <= k <= n:
        raise FormulaError(f"need 1 <= k <= n, got n={n}, k={k}")
    return n * n / k
