import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphqfi import kernels
from graphqfi._accel import HAVE_NUMBA, backend

JACOBI = [kernels.jacobi_eigh_numpy, kernels.jacobi_eigh_numba]
SIGNS = [kernels.graph_signs_numpy, kernels.graph_signs_numba]
PRODUCTS = [kernels.group_products_numpy, kernels.group_products_numba]


def random_hermitian(rng, m):
    a = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    return (a + a.conj().T) / 2


@pytest.mark.parametrize("solver", JACOBI)
@pytest.mark.parametrize("m", [1, 2, 3, 7, 16, 33])
def test_jacobi_matches_lapack(solver, m):
    a = random_hermitian(np.random.default_rng(m), m)
    w, v = solver(a)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a)[::-1], atol=1e-10)
    assert np.all(np.diff(w) <= 0)
    np.testing.assert_allclose((v * w) @ v.conj().T, a, atol=1e-10)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(m), atol=1e-10)


@pytest.mark.parametrize("solver", JACOBI)
def test_jacobi_degenerate_and_diagonal(solver):
    a = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)
    w, v = solver(a)
    np.testing.assert_allclose(w, [1, 1, 0, 0])
    proj = np.full((4, 4), 0.25, dtype=complex)
    w, _ = solver(proj)
    np.testing.assert_allclose(w, [1, 0, 0, 0], atol=1e-12)


@pytest.mark.parametrize("solver", JACOBI)
def test_jacobi_gives_up_when_capped(solver):
    a = random_hermitian(np.random.default_rng(0), 12)
    with pytest.raises(kernels.ConvergenceError):
        solver(a, max_sweeps=1)


@given(st.integers(1, 8), st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=12))
def test_graph_signs_backends_agree(n, pairs):
    edges = sorted({(min(a, b), max(a, b)) for a, b in pairs if a != b and max(a, b) < n})
    ei = np.array([e[0] for e in edges], dtype=np.int64)
    ej = np.array([e[1] for e in edges], dtype=np.int64)
    np.testing.assert_array_equal(SIGNS[0](n, ei, ej), SIGNS[1](n, ei, ej))


def test_graph_signs_single_edge():
    # qubit 0 is the most significant bit: only |11> picks up a sign
    out = kernels.graph_signs_numpy(2, np.array([0]), np.array([1]))
    assert out.tolist() == [0, 0, 0, 1]


@given(st.lists(st.tuples(st.integers(0, 31), st.integers(0, 31), st.integers(0, 3)), min_size=1, max_size=6))
def test_group_products_backends_agree(gens):
    gx = np.array([g[0] for g in gens], dtype=np.uint64)
    gz = np.array([g[1] for g in gens], dtype=np.uint64)
    gr = np.array([g[2] for g in gens], dtype=np.int64)
    a, b = PRODUCTS[0](gx, gz, gr), PRODUCTS[1](gx, gz, gr)
    for u, w in zip(a, b):
        np.testing.assert_array_equal(u, w)
    assert a[0].shape == (1 << len(gens),)


def test_backend_flag():
    assert backend() == ("numba" if HAVE_NUMBA else "numpy")


def test_env_flag_selects_numpy_fallback():
    env = dict(os.environ, GRAPHQFI_NUMBA="0")
    code = (
        "from graphqfi import kernels, backend;"
        "from graphqfi.graph import make_family;"
        "from graphqfi.oracle import graph_state_vector, qfi_pure;"
        "assert backend() == 'numpy';"
        "assert kernels.jacobi_eigh is kernels.jacobi_eigh_numpy;"
        "print(qfi_pure(graph_state_vector(make_family('star', 6))))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert float(out.stdout) == pytest.approx(26.0)


def test_benchmark_script_runs():
    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(script), "--repeat", "1"], capture_output=True, text=True, check=True)
    assert "jacobi m=64" in out.stdout and "speedup" in out.stdout
