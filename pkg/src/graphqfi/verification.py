"""Formula-vs-oracle comparison suites on small graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from .graph import Graph, bundled_family, bundled_triangle, make_family, partition
from .measurement import plan_measurement, precision_curve
from .noise import qfi_dephasing_exact, qfi_erasure_pattern
from .oracle import (
    apply_dephasing,
    apply_twin_clifford,
    density_from_state,
    graph_state_vector,
    partial_trace,
    qfi_mixed,
    qfi_pure,
)
from .qfi import qfi_graph, qfi_graph_lc

P_GRID = tuple(round(0.05 * i, 12) for i in range(11))


def family_set(max_n: int) -> dict[str, Graph]:
    """Every named test graph with at most ``max_n`` vertices, keyed by label."""
    out: dict[str, Graph] = {}
    for n in range(2, max_n + 1):
        for name in ("path", "cycle", "star", "complete"):
            if name == "cycle" and n < 3:
                continue
            out[f"{name}:{n}"] = make_family(name, n)
    for rows in range(2, max_n + 1):
        for cols in range(rows, max_n // rows + 1):
            out[f"grid:{rows},{cols}"] = make_family("grid", rows, cols)
    for name, kmin in (("star", 2), ("cycle", 3)):
        for k in range(kmin, max_n + 1):
            for j in range(2, max_n // k + 1):
                out[f"bundled-{name}:{k},{j}"] = bundled_family(name, k, j)
    tri = bundled_triangle()
    if tri.n <= max_n:
        out["bundled-triangle:3,4,3"] = tri
    return out


def random_connected_graph(n: int, rng: np.random.Generator, extra: float = 0.3) -> Graph:
    """Random spanning tree plus each remaining edge with probability ``extra``."""
    order = rng.permutation(n)
    edges = {tuple(sorted((int(order[i]), int(order[rng.integers(i)])))) for i in range(1, n)}
    for a, b in combinations(range(n), 2):
        if (a, b) not in edges and rng.random() < extra:
            edges.add((a, b))
    return Graph.from_edges(n, sorted(edges))


def twin_vertices(g: Graph) -> list[int]:
    return sorted(v for c in partition(g).closed_classes if c.size >= 2 for v in c.members)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    max_deviation: float
    tolerance: float
    worst: str

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def _run(name: str, tol: float, cases) -> SuiteResult:
    worst, label, count = 0.0, "", 0
    for case_label, formula, oracle in cases:
        dev = abs(formula - oracle)
        count += 1
        if dev > worst or count == 1:
            worst, label = dev, case_label
    return SuiteResult(name, count, worst, tol, label)


def noiseless_cases(graphs: dict[str, Graph]):
    for label, g in graphs.items():
        yield label, qfi_graph(g).value, qfi_pure(graph_state_vector(g))


def lc_cases(graphs: dict[str, Graph]):
    for label, g in graphs.items():
        psi = apply_twin_clifford(graph_state_vector(g), twin_vertices(g))
        yield label, qfi_graph_lc(g).value, qfi_pure(psi)


def dephasing_cases(graphs: dict[str, Graph], grid=P_GRID):
    for label, g in graphs.items():
        psi = graph_state_vector(g)
        for p in grid:
            yield f"{label} p={p}", qfi_dephasing_exact(g, p).value, qfi_mixed(apply_dephasing(psi, p))


def erasure_cases(graphs: dict[str, Graph], max_e: int = 2):
    for label, g in graphs.items():
        rho = density_from_state(graph_state_vector(g))
        for e in range(1, max_e + 1):
            if e >= g.n:
                continue
            for sites in combinations(range(g.n), e):
                yield f"{label} lose {sites}", qfi_erasure_pattern(g, sites).value, qfi_mixed(partial_trace(rho, sites))


def measurement_cases(graphs: dict[str, Graph], theta: float = 0.01):
    # deviation of theta-variance times Q from the Cramer-Rao value 1
    for label, g in graphs.items():
        plan = plan_measurement(g)
        if plan.graph.n > 12:
            continue
        yield label, precision_curve(plan, [theta])[0] * qfi_graph(g).value, 1.0


SUITES: dict[str, tuple[Callable, float]] = {
    "noiseless": (noiseless_cases, 1e-6),
    "lc": (lc_cases, 1e-6),
    "dephasing": (dephasing_cases, 1e-6),
    "erasure": (erasure_cases, 1e-6),
    "measurement": (measurement_cases, 1e-2),
}


def run_suite(name: str, max_n: int) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    cases, tol = SUITES[name]
    return _run(name, tol, cases(family_set(max_n)))
