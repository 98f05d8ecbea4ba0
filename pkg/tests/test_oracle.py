import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs
from graphqfi.graph import Graph, make_family
from graphqfi.noise import qfi_erasure_pattern
from graphqfi.oracle import (
    MIXED_LIMIT,
    STATE_LIMIT,
    OracleError,
    apply_dephasing,
    apply_dephasing_kraus,
    apply_twin_clifford,
    density_from_state,
    eigendecompose,
    evolve_phase,
    graph_state_vector,
    partial_trace,
    pauli_expectation,
    qfi_mixed,
    qfi_pure,
    stabilizer_state_vector,
)
from graphqfi.pauli import PauliOperator, StabilizerGroup, enumerate_group, generators_from_graph

P = PauliOperator.from_string


def test_single_vertex_state():
    psi = graph_state_vector(Graph.from_edges(1, []))
    np.testing.assert_allclose(psi, [2**-0.5, 2**-0.5])


def test_k2_state():
    psi = graph_state_vector(make_family("star", 2))
    plus, minus = np.array([1, 1]) / 2**0.5, np.array([1, -1]) / 2**0.5
    expected = (np.kron([1, 0], plus) + np.kron([0, 1], minus)) / 2**0.5
    np.testing.assert_allclose(psi, expected, atol=1e-12)


@given(connected_graphs(max_n=6))
def test_graph_state_is_stabilized(g):
    psi = graph_state_vector(g)
    for p in enumerate_group(generators_from_graph(g)):
        assert pauli_expectation(psi, p) == pytest.approx(1.0, abs=1e-10)


@given(connected_graphs(max_n=5))
def test_projector_construction_matches_circuit(g):
    a = graph_state_vector(g)
    b = stabilizer_state_vector(generators_from_graph(g))
    assert abs(np.vdot(a, b)) == pytest.approx(1.0, abs=1e-10)


def test_guards():
    with pytest.raises(OracleError):
        graph_state_vector(make_family("path", STATE_LIMIT + 1))
    with pytest.raises(OracleError):
        apply_dephasing(graph_state_vector(make_family("path", MIXED_LIMIT + 1)), 0.1)
    with pytest.raises(OracleError, match="normalised"):
        qfi_pure(np.ones(4, dtype=complex))
    with pytest.raises(OracleError, match="power of two"):
        qfi_pure(np.ones(3, dtype=complex) / 3**0.5)


def test_expectation_examples():
    psi = graph_state_vector(make_family("star", 4))
    assert pauli_expectation(psi, P("XZZZ")) == pytest.approx(1)
    assert pauli_expectation(psi, P("XIII")) == pytest.approx(0, abs=1e-12)
    assert pauli_expectation(psi, P("IIII")) == pytest.approx(1)
    with pytest.raises(OracleError):
        pauli_expectation(psi, P("XX"))


def test_qfi_pure_examples():
    assert qfi_pure(graph_state_vector(make_family("star", 10))) == pytest.approx(82)
    assert qfi_pure(graph_state_vector(make_family("path", 5))) == pytest.approx(5)
    zero = np.zeros(8, dtype=complex)
    zero[0] = 1
    assert qfi_pure(zero) == pytest.approx(3)


@pytest.mark.parametrize("p", [0.0, 0.1, 0.37, 0.5, 1.0])
def test_dephasing_matches_kraus_sum(p):
    psi = graph_state_vector(make_family("cycle", 4))
    rho = apply_dephasing(psi, p)
    np.testing.assert_allclose(rho, apply_dephasing_kraus(psi, p), atol=1e-13)
    assert np.trace(rho).real == pytest.approx(1.0)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-14)


def test_dephasing_zero_is_pure_and_half_is_mixed():
    psi = graph_state_vector(make_family("star", 4))
    np.testing.assert_allclose(apply_dephasing(psi, 0.0), density_from_state(psi))
    w = eigendecompose(apply_dephasing(psi, 0.5)).eigenvalues
    np.testing.assert_allclose(w, np.full(16, 1 / 16), atol=1e-12)


@pytest.mark.parametrize("g", [make_family("path", 4), make_family("star", 5), make_family("grid", 2, 3)])
@pytest.mark.parametrize("p", [0.07, 0.3])
def test_dephasing_spectrum_is_flip_distribution(g, p):
    n = g.n
    w = eigendecompose(apply_dephasing(graph_state_vector(g), p)).eigenvalues
    expected = sorted((p ** bin(k).count("1") * (1 - p) ** (n - bin(k).count("1")) for k in range(1 << n)), reverse=True)
    np.testing.assert_allclose(w, expected, atol=1e-9)


def test_partial_trace_examples():
    rho = density_from_state(graph_state_vector(make_family("star", 2)))
    np.testing.assert_allclose(partial_trace(rho, [0]), np.eye(2) / 2, atol=1e-12)
    np.testing.assert_allclose(partial_trace(rho, [1]), np.eye(2) / 2, atol=1e-12)
    psi = graph_state_vector(make_family("path", 3))
    zero = np.array([1, 0], dtype=complex)
    prod = density_from_state(np.kron(zero, psi))
    np.testing.assert_allclose(partial_trace(prod, [0]), density_from_state(psi), atol=1e-12)
    with pytest.raises(OracleError):
        partial_trace(rho, [0, 1])
    with pytest.raises(OracleError):
        partial_trace(rho, [])


def test_partial_trace_keeps_order():
    a = np.array([1, 0], dtype=complex)
    b = np.array([0, 1], dtype=complex)
    c = np.array([1, 1j], dtype=complex) / 2**0.5
    rho = density_from_state(np.kron(np.kron(a, b), c))
    np.testing.assert_allclose(partial_trace(rho, [1]), density_from_state(np.kron(a, c)), atol=1e-12)


def test_qfi_mixed_examples():
    psi = graph_state_vector(make_family("star", 4))
    assert qfi_mixed(density_from_state(psi)) == pytest.approx(10)
    assert qfi_mixed(np.eye(2, dtype=complex) / 2, [0]) == pytest.approx(0, abs=1e-12)
    rho = density_from_state(graph_state_vector(make_family("path", 3)))
    assert qfi_mixed(partial_trace(rho, [0])) == pytest.approx(1)


@given(connected_graphs(max_n=6))
def test_qfi_mixed_agrees_with_pure(g):
    psi = graph_state_vector(g)
    assert qfi_mixed(density_from_state(psi)) == pytest.approx(qfi_pure(psi), abs=1e-8)


def test_qfi_mixed_active_subset():
    # generator on qubit 0 alone sees only that qubit's variance
    psi = graph_state_vector(make_family("star", 3))
    assert qfi_mixed(density_from_state(psi), [0]) == pytest.approx(1)


def test_density_validation():
    with pytest.raises(OracleError, match="Hermitian"):
        qfi_mixed(np.array([[0.5, 1], [0, 0.5]], dtype=complex))
    with pytest.raises(OracleError, match="trace"):
        qfi_mixed(np.eye(2, dtype=complex))


def test_twin_clifford_examples():
    k2 = graph_state_vector(make_family("star", 2))
    out = apply_twin_clifford(k2, [0, 1])
    assert pauli_expectation(out, P("XX")) == pytest.approx(1)
    psi = graph_state_vector(make_family("path", 3))
    np.testing.assert_allclose(apply_twin_clifford(psi, []), psi)
    assert qfi_pure(apply_twin_clifford(graph_state_vector(make_family("complete", 4)), range(4))) == pytest.approx(16)
    with pytest.raises(OracleError):
        apply_twin_clifford(k2, [2])


def test_twin_clifford_conjugation():
    # S X S^dag = Y, S Y S^dag = -X, S Z S^dag = Z
    basis = [np.array(v, dtype=complex) for v in ([1, 0], [0, 1], [1, 1], [1, 1j])]
    for v in basis:
        v = v / np.linalg.norm(v)
        out = apply_twin_clifford(v, [0])
        for before, after in (("X", "Y"), ("Y", "-X"), ("Z", "Z")):
            assert pauli_expectation(out, P(after)) == pytest.approx(pauli_expectation(v, P(before)), abs=1e-12)


@given(st.floats(-3, 3))
def test_evolve_phase_is_unitary_and_composes(theta):
    psi = graph_state_vector(make_family("star", 3))
    a = evolve_phase(psi, theta)
    assert np.vdot(a, a).real == pytest.approx(1.0)
    np.testing.assert_allclose(evolve_phase(a, -theta), psi, atol=1e-12)


def test_erasure_formula_matches_partial_trace_all_patterns():
    g = make_family("grid", 2, 3)
    rho = density_from_state(graph_state_vector(g))
    for e in (1, 2, 3):
        for sites in itertools.combinations(range(g.n), e):
            assert qfi_erasure_pattern(g, sites).value == pytest.approx(qfi_mixed(partial_trace(rho, sites)), abs=1e-8)


def test_stabilizer_state_of_general_group():
    s = StabilizerGroup.from_strings("XXI", "XIX", "YYY")
    psi = stabilizer_state_vector(s)
    for p in enumerate_group(s):
        assert pauli_expectation(psi, p) == pytest.approx(1.0)
    assert qfi_pure(psi) == pytest.approx(9)
