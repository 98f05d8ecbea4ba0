"""Quantum Fisher information of graph and stabilizer states."""

from ._accel import backend
from .counting import empirical_census, metrology_bound, stabilizer_state_count, useful_construction
from .graph import (
    Graph,
    GraphError,
    build_bundle,
    bundled_family,
    bundled_triangle,
    load_graph,
    make_family,
    parse_family,
    parse_graph,
    partition,
)
from .measurement import (
    MeasurementPlan,
    expectation_curve,
    extend_graph_plus,
    find_pairing_stabilizer,
    find_yz_stabilizer,
    plan_measurement,
    precision_curve,
)
from .noise import (
    ErasurePattern,
    qfi_dephasing_approx,
    qfi_dephasing_exact,
    qfi_erasure_average_exact,
    qfi_erasure_cyclic_formula,
    qfi_erasure_pattern,
    qfi_erasure_single_avg_formula,
    qfi_erasure_star_formula,
)
from .pauli import PauliOperator, StabilizerGroup, classify_x_forms, generators_from_graph
from .qfi import FormulaError, QfiValue, bundle_bound, qfi_graph, qfi_graph_lc, qfi_stabilizer

__version__ = "0.1.0"
