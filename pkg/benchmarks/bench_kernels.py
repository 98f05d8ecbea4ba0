"""Time the numba kernels against their pure-numpy counterparts.

    python benchmarks/bench_kernels.py [--repeat 5]

Numba is compiled once before timing, so the numbers are steady-state.
"""

import argparse
import timeit

import numpy as np

from graphqfi import kernels
from graphqfi._accel import HAVE_NUMBA
from graphqfi.graph import make_family
from graphqfi.pauli import generators_from_graph


def hermitian(m, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    return (a + a.conj().T) / 2


def cases():
    for m in (16, 32, 64):
        a = hermitian(m)
        yield f"jacobi m={m}", kernels.jacobi_eigh_numpy, kernels.jacobi_eigh_numba, (a,)
    for n in (10, 14):
        g = make_family("grid", 2, n // 2)
        ei = np.array([e[0] for e in g.edges], dtype=np.int64)
        ej = np.array([e[1] for e in g.edges], dtype=np.int64)
        yield f"graph signs n={n}", kernels.graph_signs_numpy, kernels.graph_signs_numba, (n, ei, ej)
    for n in (12, 18):
        s = generators_from_graph(make_family("cycle", n))
        gx = np.array([p.x for p in s.generators], dtype=np.uint64)
        gz = np.array([p.z for p in s.generators], dtype=np.uint64)
        gr = np.array([p.xz_exp for p in s.generators], dtype=np.int64)
        yield f"group products n={n}", kernels.group_products_numpy, kernels.group_products_numba, (gx, gz, gr)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba disabled; the numba column times the same code uncompiled")
    print(f"{'kernel':<22}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for label, slow, fast, call_args in cases():
        fast(*call_args)
        t_np = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        print(f"{label:<22}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
