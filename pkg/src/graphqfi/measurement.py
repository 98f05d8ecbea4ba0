"""Fixed local-measurement strategies for graph-state phase estimation.

A stabilizer made only of Y and Z letters anticommutes with every X_i, so
its expectation under the phase rotation is <exp(i theta sum X)>, which is
1 - theta**2 Q / 2 to second order. Where no such stabilizer exists, one
extra qubit is attached to the X/I positions of a suitable stabilizer and
the product with the new generator is measured instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, GraphError, partition
from .oracle import evolve_phase, graph_state_vector, pauli_expectation
from .pauli import (
    PauliOperator,
    StabilizerGroup,
    generators_from_graph,
    group_arrays,
    multiply,
)
from .qfi import qfi_graph

DERIV_STEP = 1e-5


class MeasurementError(ValueError):
    pass


@dataclass(frozen=True)
class MeasurementPlan:
    graph: Graph
    observable: PauliOperator
    extended: bool
    probe_qubits: int
    theta_domain: tuple[float, float]

    def describe(self) -> str:
        kind = "extended (one ancilla)" if self.extended else "direct"
        lo, hi = self.theta_domain
        return (
            f"plan: {kind}\n"
            f"graph: {self.graph.to_json()}\n"
            f"observable: {self.observable}\n"
            f"probe qubits: 0..{self.probe_qubits - 1}\n"
            f"small-phase domain: {lo:g} < |theta| <= {hi:.6g}"
        )


def _lex_keys(n: int, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Base-4 key ordering Pauli strings lexicographically (I < X < Y < Z)."""
    key = np.zeros(x.shape[0], dtype=np.int64)
    for q in range(n):
        xb = ((x >> np.uint64(q)) & np.uint64(1)).astype(np.int64)
        zb = ((z >> np.uint64(q)) & np.uint64(1)).astype(np.int64)
        code = xb * (1 + zb) + 3 * zb * (1 - xb)
        key = key * 4 + code
    return key


def _pick(n: int, x, z, mask) -> PauliOperator | None:
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return None
    best = idx[np.argmin(_lex_keys(n, x[idx], z[idx]))]
    return PauliOperator(n, int(x[best]), int(z[best]), 0)


def find_yz_stabilizer(s: StabilizerGroup) -> PauliOperator | None:
    """Smallest +1-sign group element with a Y or Z on every qubit."""
    x, z, k = group_arrays(s)
    full = np.uint64((1 << s.n) - 1)
    return _pick(s.n, x, z, (z == full) & (k == 0))


def is_pairing_stabilizer(g: Graph, s: PauliOperator) -> bool:
    """Every open class is uniformly {Y,Z} or uniformly {X,I} under ``s``."""
    for cls in partition(g).open_classes:
        zs = {(s.z >> i) & 1 for i in cls.members}
        if len(zs) > 1:
            return False
    return True


def find_pairing_stabilizer(g: Graph) -> PauliOperator | None:
    g.require_no_isolated()
    x, z, k = group_arrays(generators_from_graph(g))
    ok = k == 0
    for cls in partition(g).open_classes:
        cm = np.uint64(sum(1 << i for i in cls.members))
        zc = z & cm
        ok &= (zc == 0) | (zc == cm)
    nonid = ok & ((x | z) != 0)
    return _pick(g.n, x, z, nonid if nonid.any() else ok)


def extend_graph_plus(g: Graph, s: PauliOperator) -> tuple[Graph, PauliOperator]:
    """Attach vertex n to the X/I positions of ``s``; return G+ and the observable.

    The observable is g_{n+1} times the G+ stabilizer that shares the X-part
    of ``s``. It carries Y/Z on qubits 0..n-1; on the new qubit it is X or Y
    depending on the parity of |supp_X(s) & C_S|.
    """
    g.require_no_isolated()
    group = generators_from_graph(g)
    if s.n != g.n or not group.contains(s):
        raise MeasurementError(f"{s} is not a +1 stabilizer of the graph state")
    if not is_pairing_stabilizer(g, s):
        raise MeasurementError(f"{s} mixes Y/Z and X/I letters within an open class")
    n = g.n
    attach = [i for i in range(n) if not (s.z >> i) & 1]
    if not attach:
        raise MeasurementError("C_S is empty: the appended vertex would be isolated")
    plus = Graph.from_edges(n + 1, g.edges + [(i, n) for i in attach])
    plus_group = generators_from_graph(plus)
    c_mask = sum(1 << i for i in attach)
    parity = bin(s.x & c_mask).count("1") & 1
    lifted = plus_group.lookup(s.x, s.z | (parity << n))
    new_gen = plus_group.generators[n]
    observable = multiply(new_gen, lifted)
    if not plus_group.contains(observable):
        raise MeasurementError("internal error: extended observable is not a stabilizer")
    return plus, observable


def _domain(q: float) -> tuple[float, float]:
    return (0.0, 1.0 / math.sqrt(q))


def plan_measurement(g: Graph, s: PauliOperator | None = None) -> MeasurementPlan:
    """Direct Y/Z plan when one exists, otherwise the one-ancilla extension."""
    g.require_no_isolated()
    q = qfi_graph(g).value
    if s is None:
        yz = find_yz_stabilizer(generators_from_graph(g))
        if yz is not None:
            return MeasurementPlan(g, yz, False, g.n, _domain(q))
        s = find_pairing_stabilizer(g)
        if s is None:
            raise MeasurementError("no pairing stabilizer found")
    elif all((s.z >> i) & 1 for i in range(g.n)):
        if not generators_from_graph(g).contains(s):
            raise MeasurementError(f"{s} is not a +1 stabilizer of the graph state")
        return MeasurementPlan(g, s, False, g.n, _domain(q))
    plus, obs = extend_graph_plus(g, s)
    return MeasurementPlan(plus, obs, True, g.n, _domain(q))


def expectation_curve(plan: MeasurementPlan, thetas: Sequence[float]) -> list[float]:
    """<observable> after the phase rotation on the probe qubits."""
    psi = graph_state_vector(plan.graph)
    probes = range(plan.probe_qubits)
    return [pauli_expectation(evolve_phase(psi, t, probes), plan.observable) for t in thetas]


def precision_curve(plan: MeasurementPlan, thetas: Sequence[float]) -> list[float]:
    """Error-propagation variance (1 - <S>^2) / (d<S>/dtheta)^2, central differences."""
    out = []
    for t in thetas:
        if t == 0:
            raise MeasurementError("uninformative operating point: theta = 0")
        lo, mid, hi = expectation_curve(plan, [t - DERIV_STEP, t, t + DERIV_STEP])
        deriv = (hi - lo) / (2 * DERIV_STEP)
        if abs(deriv) < 1e-12:
            raise MeasurementError(f"uninformative operating point: theta = {t}")
        out.append((1 - mid * mid) / deriv**2)
    return out


def validate_plan(plan: MeasurementPlan) -> None:
    """Check the observable is a +1 stabilizer with the required letter pattern."""
    group = generators_from_graph(plan.graph)
    obs = plan.observable
    if not group.contains(obs):
        raise MeasurementError(f"{obs} is not a +1 stabilizer")
    for q in range(plan.probe_qubits):
        if obs.letter(q) not in "YZ":
            raise MeasurementError(f"letter {obs.letter(q)} at probe qubit {q}")
    if not plan.extended and plan.probe_qubits != plan.graph.n:
        raise GraphError("direct plans measure every qubit")
