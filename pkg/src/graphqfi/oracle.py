"""Dense brute-force ground truth for small instances.

States are plain numpy arrays: a statevector has length ``2**n`` and a
density matrix is ``2**n x 2**n``. Qubit 0 is the most significant bit of
the basis index (the ``np.kron`` ordering), so axis ``q`` of
``psi.reshape((2,) * n)`` is qubit ``q``.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from . import kernels
from .graph import Graph
from .pauli import PauliOperator, StabilizerGroup

STATE_LIMIT = 14
MIXED_LIMIT = 10
EIG_CUTOFF = 1e-10


class OracleError(ValueError):
    pass


def num_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise OracleError(f"dimension {dim} is not a power of two")
    return n


def _index_mask(n: int, qubit_mask: int) -> int:
    out = 0
    for q in range(n):
        if (qubit_mask >> q) & 1:
            out |= 1 << (n - 1 - q)
    return out


def _check_state(psi: np.ndarray) -> int:
    n = num_qubits(psi.shape[0])
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > 1e-12:
        raise OracleError(f"state is not normalised (norm^2 = {norm})")
    return n


# ------------------------------------------------------------ pure states


def graph_state_vector(g: Graph) -> np.ndarray:
    """|+>^n followed by a controlled-phase per edge."""
    if g.n > STATE_LIMIT:
        raise OracleError(f"statevector limited to n <= {STATE_LIMIT}, got {g.n}")
    edges = g.edges
    ei = np.array([e[0] for e in edges], dtype=np.int64)
    ej = np.array([e[1] for e in edges], dtype=np.int64)
    par = kernels.graph_signs(g.n, ei, ej)
    return (1.0 - 2.0 * par).astype(np.complex128) / np.sqrt(2.0**g.n)


def pauli_apply(psi: np.ndarray, p: PauliOperator) -> np.ndarray:
    n = num_qubits(psi.shape[0])
    if p.n != n:
        raise OracleError(f"Pauli acts on {p.n} qubits, state has {n}")
    xm, zm = _index_mask(n, p.x), _index_mask(n, p.z)
    idx = np.arange(1 << n, dtype=np.int64)
    src = idx ^ xm
    signs = 1.0 - 2.0 * (np.bitwise_count(src & zm) & 1)
    return (1j**p.xz_exp) * signs * psi[src]


def pauli_matrix(p: PauliOperator) -> np.ndarray:
    dim = 1 << p.n
    return np.stack([pauli_apply(col, p) for col in np.eye(dim, dtype=np.complex128)], axis=1)


def pauli_expectation(psi: np.ndarray, p: PauliOperator) -> float:
    val = np.vdot(psi, pauli_apply(psi, p))
    if p.is_hermitian and abs(val.imag) > 1e-9:
        raise OracleError("Hermitian Pauli produced a complex expectation")
    return float(val.real)


def stabilizer_state_vector(s: StabilizerGroup) -> np.ndarray:
    """Project a basis vector with prod_i (I + g_i)/2 and normalise."""
    if s.n > MIXED_LIMIT:
        raise OracleError(f"projector construction limited to n <= {MIXED_LIMIT}")
    dim = 1 << s.n
    for x in range(dim):
        v = np.zeros(dim, dtype=np.complex128)
        v[x] = 1.0
        for g in s.generators:
            v = 0.5 * (v + pauli_apply(v, g))
        # some basis overlap is at least 1/dim
        norm = np.vdot(v, v).real
        if norm >= 0.5 / dim:
            return v / np.sqrt(norm)
    raise OracleError("projection vanished; generators inconsistent")


def _x_images(psi: np.ndarray, qubits: Iterable[int]) -> list[np.ndarray]:
    n = num_qubits(psi.shape[0])
    t = psi.reshape((2,) * n)
    return [np.flip(t, axis=q).reshape(-1) for q in qubits]


def qfi_pure(psi: np.ndarray) -> float:
    """Sum over i, j of <X_i X_j> - <X_i><X_j>."""
    n = _check_state(psi)
    phis = _x_images(psi, range(n))
    first = np.array([np.vdot(psi, f).real for f in phis])
    second = np.array([[np.vdot(a, b).real for b in phis] for a in phis])
    return float(second.sum() - first.sum() ** 2)


def apply_twin_clifford(psi: np.ndarray, vertices: Iterable[int]) -> np.ndarray:
    """Phase gate diag(1, i) on each listed qubit (X -> Y, Y -> -X, Z -> Z)."""
    n = num_qubits(psi.shape[0])
    t = psi.reshape((2,) * n).copy()
    for q in set(vertices):
        if not 0 <= q < n:
            raise OracleError(f"vertex {q} out of range")
        idx = [slice(None)] * n
        idx[q] = 1
        t[tuple(idx)] *= 1j
    return t.reshape(-1)


def evolve_phase(psi: np.ndarray, theta: float, qubits: Iterable[int] | None = None) -> np.ndarray:
    """Apply exp(-i theta/2 X_q) on the given qubits (all by default)."""
    n = num_qubits(psi.shape[0])
    qubits = range(n) if qubits is None else qubits
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    t = psi.reshape((2,) * n)
    for q in qubits:
        t = c * t - 1j * s * np.flip(t, axis=q)
    return t.reshape(-1)


# ----------------------------------------------------------- mixed states


def apply_dephasing(psi: np.ndarray, p: float) -> np.ndarray:
    """iid phase flips with probability p.

    Averaging Z_k psi psi^dag Z_k over flip patterns k multiplies entry (x, y)
    by (1 - 2p)**hamming(x, y).
    """
    n = _check_state(psi)
    if n > MIXED_LIMIT:
        raise OracleError(f"density matrices limited to n <= {MIXED_LIMIT}, got {n}")
    if not 0.0 <= p <= 1.0:
        raise OracleError(f"p must lie in [0, 1], got {p}")
    idx = np.arange(1 << n, dtype=np.int64)
    ham = np.bitwise_count(idx[:, None] ^ idx[None, :])
    return np.outer(psi, psi.conj()) * (1.0 - 2.0 * p) ** ham


def apply_dephasing_kraus(psi: np.ndarray, p: float) -> np.ndarray:
    """Literal sum over all 2**n flip patterns; slow reference for tests."""
    n = _check_state(psi)
    rho = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for k in range(1 << n):
        w = p ** bin(k).count("1") * (1 - p) ** (n - bin(k).count("1"))
        phi = pauli_apply(psi, PauliOperator(n, 0, k))
        rho += w * np.outer(phi, phi.conj())
    return rho


def partial_trace(rho: np.ndarray, sites: Iterable[int]) -> np.ndarray:
    """Trace out ``sites``; remaining qubits keep their relative order."""
    n = num_qubits(rho.shape[0])
    sites = sorted(set(sites))
    if not sites:
        raise OracleError("no sites to trace out")
    if len(sites) >= n:
        raise OracleError("cannot trace out every qubit")
    for y in sites:
        if not 0 <= y < n:
            raise OracleError(f"site {y} out of range")
    keep = [q for q in range(n) if q not in sites]
    t = rho.reshape((2,) * (2 * n))
    row = list(range(n))
    col = list(range(n, 2 * n))
    for y in sites:
        col[y] = row[y]
    out = [row[q] for q in keep] + [col[q] for q in keep]
    red = np.einsum(t, row + col, out)
    m = len(keep)
    return red.reshape(1 << m, 1 << m)


def density_from_state(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, psi.conj())


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eigendecompose(rho: np.ndarray) -> EigenDecomposition:
    """Jacobi eigendecomposition with reconstruction and orthonormality checks."""
    w, v = kernels.jacobi_eigh(rho)
    recon = np.abs((v * w) @ v.conj().T - rho).max()
    ortho = np.abs(v.conj().T @ v - np.eye(v.shape[1])).max()
    if recon > 1e-9 or ortho > 1e-10:
        raise OracleError(f"eigendecomposition self-check failed (recon {recon:.2e}, ortho {ortho:.2e})")
    return EigenDecomposition(w, v)


def _check_density(rho: np.ndarray) -> int:
    n = num_qubits(rho.shape[0])
    if rho.shape != (1 << n, 1 << n):
        raise OracleError("density matrix must be square")
    if np.abs(rho - rho.conj().T).max() > 1e-12:
        raise OracleError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-12:
        raise OracleError("density matrix trace is not 1")
    return n


def qfi_mixed(rho: np.ndarray, active: Iterable[int] | None = None) -> float:
    """Spectral QFI for H = (1/2) sum of X over the ``active`` qubits (default all)."""
    n = _check_density(rho)
    active = range(n) if active is None else sorted(set(active))
    lam, vec = eigendecompose(rho)
    if lam.min() < -EIG_CUTOFF:
        raise OracleError(f"density matrix has negative eigenvalue {lam.min():.3e}")
    dim = 1 << n
    t = vec.reshape((2,) * n + (dim,))
    hv = np.zeros_like(t)
    for q in active:
        hv += np.flip(t, axis=q)
    hmat = 0.5 * (vec.conj().T @ hv.reshape(dim, dim))
    lsum = lam[:, None] + lam[None, :]
    ldiff = lam[:, None] - lam[None, :]
    keep = lsum > EIG_CUTOFF
    terms = np.where(keep, ldiff**2 / np.where(keep, lsum, 1.0), 0.0) * np.abs(hmat) ** 2
    return float(2.0 * terms.sum())
