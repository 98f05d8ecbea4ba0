"""Hot numeric loops.

Each kernel has a numba version (used when numba is importable and
``GRAPHQFI_NUMBA`` is not ``0``) and a pure-numpy version with the same
contract. The public names at the bottom dispatch to whichever is active.
"""

import numpy as np

from ._accel import HAVE_NUMBA, njit

OFF_TOL = 1e-12
MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    pass


# ---------------------------------------------------------------- Jacobi


def _offdiag_norm(a):
    off = a - np.diag(np.diag(a))
    return np.sqrt(np.sum(off.real**2 + off.imag**2))


def _round_robin(m):
    """Rounds of disjoint index pairs covering every pair once (circle method)."""
    idx = list(range(m)) + ([-1] if m % 2 else [])
    size = len(idx)
    rounds = []
    for _ in range(size - 1):
        pairs = [(idx[i], idx[size - 1 - i]) for i in range(size // 2)]
        pairs = [(min(p), max(p)) for p in pairs if -1 not in p]
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        idx = [idx[0], idx[-1]] + idx[1:-1]
    return rounds


def jacobi_eigh_numpy(a, tol=OFF_TOL, max_sweeps=MAX_SWEEPS):
    """Cyclic complex Jacobi, with each round of disjoint rotations applied at once."""
    a = np.array(a, dtype=np.complex128, copy=True)
    m = a.shape[0]
    v = np.eye(m, dtype=np.complex128)
    if m == 1:
        return a.real.diagonal().copy(), v
    rounds = _round_robin(m)
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= tol:
            break
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            live = mag > 1e-300
            if not live.any():
                continue
            p, q, apq, mag = p[live], q[live], apq[live], mag[live]
            phase = apq / mag
            tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
            sgn = np.where(tau >= 0.0, 1.0, -1.0)
            t = sgn / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ph = np.conj(phase)
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * (s * ph)
            a[:, q] = cp * s + cq * (c * ph)
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = rp * c[:, None] - rq * (s * phase)[:, None]
            a[q, :] = rp * s[:, None] + rq * (c * phase)[:, None]
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * (s * ph)
            v[:, q] = vp * s + vq * (c * ph)
    else:
        if _offdiag_norm(a) > tol:
            raise ConvergenceError("Jacobi did not converge")
    w = a.diagonal().real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


@njit(cache=True)
def _jacobi_sweeps_nb(a, v, tol, max_sweeps):
    m = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(m):
            for j in range(m):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if np.sqrt(off) <= tol:
            return sweep
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                ph = phase.conjugate()
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                sgn = 1.0 if tau >= 0.0 else -1.0
                t = sgn / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(m):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = x * c - y * (s * ph)
                    a[k, q] = x * s + y * (c * ph)
                for k in range(m):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = x * c - y * (s * phase)
                    a[q, k] = x * s + y * (c * phase)
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(m):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = x * c - y * (s * ph)
                    v[k, q] = x * s + y * (c * ph)
    return -1


def jacobi_eigh_numba(a, tol=OFF_TOL, max_sweeps=MAX_SWEEPS):
    """Classic row-cyclic complex Jacobi compiled with numba."""
    a = np.array(a, dtype=np.complex128, copy=True)
    v = np.eye(a.shape[0], dtype=np.complex128)
    if _jacobi_sweeps_nb(a, v, tol, max_sweeps) < 0 and _offdiag_norm(a) > tol:
        raise ConvergenceError("Jacobi did not converge")
    w = a.diagonal().real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


# ---------------------------------------------------------- graph states


def graph_signs_numpy(n, ei, ej):
    """Parity of sum over edges of x_i x_j for every basis index x (qubit 0 = MSB)."""
    x = np.arange(1 << n, dtype=np.int64)
    par = np.zeros(1 << n, dtype=np.int64)
    for i, j in zip(ei, ej):
        par ^= (x >> (n - 1 - i)) & (x >> (n - 1 - j)) & 1
    return par


@njit(cache=True)
def graph_signs_numba(n, ei, ej):
    dim = 1 << n
    par = np.zeros(dim, dtype=np.int64)
    for x in range(dim):
        acc = 0
        for e in range(ei.shape[0]):
            acc ^= (x >> (n - 1 - ei[e])) & (x >> (n - 1 - ej[e])) & 1
        par[x] = acc
    return par


# ------------------------------------------------------ group enumeration


def group_products_numpy(gx, gz, gr):
    """All 2**m products of m generators in XZ form.

    Element ``t`` is the ordered product of generators ``i`` with bit ``i`` of
    ``t`` set. Phases are exponents of i, mod 4.
    """
    m = gx.shape[0]
    x = np.zeros(1, dtype=np.uint64)
    z = np.zeros(1, dtype=np.uint64)
    r = np.zeros(1, dtype=np.int64)
    for i in range(m):
        cross = np.bitwise_count(z & gx[i]).astype(np.int64)
        x = np.concatenate([x, x ^ gx[i]])
        r = np.concatenate([r, (r + gr[i] + 2 * cross) % 4])
        z = np.concatenate([z, z ^ gz[i]])
    return x, z, r


@njit(cache=True)
def _popcount(v):
    c = 0
    while v:
        v &= v - np.uint64(1)
        c += 1
    return c


@njit(cache=True)
def group_products_numba(gx, gz, gr):
    m = gx.shape[0]
    total = 1 << m
    x = np.zeros(total, dtype=np.uint64)
    z = np.zeros(total, dtype=np.uint64)
    r = np.zeros(total, dtype=np.int64)
    size = 1
    for i in range(m):
        for t in range(size):
            x[size + t] = x[t] ^ gx[i]
            z[size + t] = z[t] ^ gz[i]
            r[size + t] = (r[t] + gr[i] + 2 * _popcount(z[t] & gx[i])) % 4
        size *= 2
    return x, z, r


if HAVE_NUMBA:
    jacobi_eigh = jacobi_eigh_numba
    graph_signs = graph_signs_numba
    group_products = group_products_numba
else:
    jacobi_eigh = jacobi_eigh_numpy
    graph_signs = graph_signs_numpy
    group_products = group_products_numpy
