"""Closed-form QFI of graph states under iid dephasing and under qubit erasures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .graph import Graph, GraphError, partition
from .qfi import FormulaError, QfiValue, qfi_graph

AVERAGE_LIMIT = 2_000_000


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise FormulaError(f"dephasing probability must lie in [0, 1], got {p}")


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


# ---------------------------------------------------------------- dephasing


def dephasing_f(v: int, p: float) -> float:
    """Mean of (v - 2A)**2 for A ~ Binomial(v, p)."""
    return v * v * (1 - 2 * p) ** 2 + 4 * v * p * (1 - p)


def dephasing_g(N: int, p: float) -> float:
    """Neighbourhood factor; 2 when noiseless, 0 at p = 1/2."""
    _check_p(p)
    if N < 1:
        raise FormulaError("neighbourhood size must be >= 1")
    if p in (0.0, 1.0):
        return 2.0
    lp, lq = math.log(p), math.log1p(-p)
    total = 0.0
    for j in range(N + 1):
        la = (N - j) * lp + j * lq
        lb = j * lp + (N - j) * lq
        hi, lo = max(la, lb), min(la, lb)
        if hi == lo:
            continue
        # log|a - b| and log(a + b) without forming a or b
        ldiff = hi + math.log1p(-math.exp(lo - hi))
        lsum = hi + math.log1p(math.exp(lo - hi))
        total += math.exp(math.log(math.comb(N, j)) + 2 * ldiff - lsum)
    return total


def g_lower_bound(N: int, p: float) -> float:
    return 2.0 - 2.0 * (2 * p * (1 - p) + 0.5) ** N


def qfi_dephasing_exact(g: Graph, p: float) -> QfiValue:
    _check_p(p)
    g.require_no_isolated()
    rep = partition(g)
    total = 0.0
    for cls in rep.open_classes:
        total += dephasing_f(cls.size, p) * dephasing_g(len(cls.shared_neighborhood), p)
    return QfiValue(0.5 * total, "dephasing_exact")


def qfi_dephasing_approx(g: Graph, p: float) -> QfiValue:
    """Large-neighbourhood approximation, valid when (2p(1-p) + 1/2)**N_l is negligible."""
    _check_p(p)
    q = qfi_graph(g).value
    return QfiValue((1 - 2 * p) ** 2 * q + 4 * g.n * p * (1 - p), "dephasing_approx")


# ----------------------------------------------------------------- erasures


@dataclass(frozen=True)
class ErasurePattern:
    sites: frozenset[int]

    def __init__(self, sites: Iterable[int]):
        object.__setattr__(self, "sites", frozenset(int(s) for s in sites))

    @property
    def e(self) -> int:
        return len(self.sites)


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


ERASURE_MODELS = ("trace", "lset")


class _ErasureTable:
    """Bitmask view of a graph's open classes, for fast per-pattern evaluation.

    ``trace`` is the exact partial-trace value: tracing out qubit y averages the
    state over Z-flips in span{Z_y, Z_N(y)}, and an open class keeps its full
    v_l**2 iff its shared neighbourhood lies outside the span collected from
    all lost qubits.

    ``lset`` is the coarser model in which every qubit of
    L = union of closed neighbourhoods of lost qubits is dephased independently;
    a class then keeps v_l**2, keeps v_l, or vanishes according to whether its
    members and its neighbourhood lie inside L.
    """

    def __init__(self, g: Graph):
        g.require_no_isolated()
        self.n = g.n
        self.open = [_mask(g.neighbors(i)) for i in range(g.n)]
        self.closed = [m | (1 << i) for i, m in enumerate(self.open)]
        rep = partition(g)
        self.classes = [(_mask(c.members), _mask(c.shared_neighborhood), c.size) for c in rep.open_classes]

    def trace_value(self, sites: Iterable[int]) -> int:
        basis: list[tuple[int, int]] = []
        for y in sites:
            for vec in (1 << y, self.open[y]):
                for pivot, row in basis:
                    if (vec >> pivot) & 1:
                        vec ^= row
                if vec:
                    basis.append((vec.bit_length() - 1, vec))
        total = 0
        for _, nmask, v in self.classes:
            for pivot, row in basis:
                if (nmask >> pivot) & 1:
                    nmask ^= row
            if nmask:
                total += v * v
        return total

    def lset_value(self, sites: Iterable[int]) -> int:
        lost = 0
        for y in sites:
            lost |= self.closed[y]
        total = 0
        for vmask, nmask, v in self.classes:
            if nmask & ~lost:
                total += v * v if vmask & ~lost else v
        return total

    def value(self, sites: Iterable[int], model: str = "trace") -> int:
        if model == "trace":
            return self.trace_value(sites)
        if model == "lset":
            return self.lset_value(sites)
        raise FormulaError(f"unknown erasure model {model!r}; expected one of {ERASURE_MODELS}")


def _check_sites(g: Graph, pat: ErasurePattern) -> None:
    if not pat.sites:
        raise FormulaError("erasure pattern is empty")
    for y in pat.sites:
        if not 0 <= y < g.n:
            raise GraphError(f"erasure site {y} out of range")


def _as_pattern(pat) -> ErasurePattern:
    return pat if isinstance(pat, ErasurePattern) else ErasurePattern(pat)


def lost_set(g: Graph, pat: ErasurePattern | Iterable[int]) -> frozenset[int]:
    """Lost qubits together with their neighbourhoods."""
    pat = _as_pattern(pat)
    _check_sites(g, pat)
    out: set[int] = set()
    for y in pat.sites:
        out |= g.closed_neighbors(y)
    return frozenset(out)


def qfi_erasure_pattern(g: Graph, pat: ErasurePattern | Iterable[int]) -> QfiValue:
    """Exact QFI of the surviving qubits after losing ``pat`` (generator on survivors)."""
    pat = _as_pattern(pat)
    _check_sites(g, pat)
    return QfiValue(_ErasureTable(g).trace_value(pat.sites), "erasure_pattern")


def qfi_erasure_pattern_lset(g: Graph, pat: ErasurePattern | Iterable[int]) -> QfiValue:
    """Case rule over the lost set L (independent dephasing of all of L)."""
    pat = _as_pattern(pat)
    _check_sites(g, pat)
    return QfiValue(_ErasureTable(g).lset_value(pat.sites), "erasure_pattern_lset")


def qfi_erasure_average_exact(g: Graph, e: int, model: str = "trace") -> float:
    """Mean pattern QFI over all ``e``-subsets, by enumeration."""
    if not 1 <= e <= g.n:
        raise FormulaError(f"need 1 <= e <= n, got e={e}")
    count = math.comb(g.n, e)
    if count > AVERAGE_LIMIT:
        raise FormulaError(f"C({g.n},{e}) = {count} patterns exceeds the enumeration limit {AVERAGE_LIMIT}")
    table = _ErasureTable(g)
    if model not in ERASURE_MODELS:
        raise FormulaError(f"unknown erasure model {model!r}; expected one of {ERASURE_MODELS}")
    total = sum(table.value(sites, model) for sites in combinations(range(g.n), e))
    return float(Fraction(total, count))


def qfi_erasure_single_avg_formula(g: Graph) -> float:
    """Closed-form single-erasure average (approximation; see tests for where it overcounts)."""
    g.require_no_isolated()
    rep = partition(g)
    n = g.n
    total = Fraction(0)
    for cls in rep.open_classes:
        v, N = cls.size, len(cls.shared_neighborhood)
        total += Fraction(v * v * (n - v - N) + v * N, n)
    return float(total)


def _bundle_size(n: int, k: int) -> int:
    if k < 1 or n % k:
        raise FormulaError(f"k={k} must divide n={n}")
    return n // k


def qfi_erasure_star_formula(n: int, k: int, e: int) -> float:
    """Average QFI of a bundled star (k bundles of n/k) after e erasures."""
    j = _bundle_size(n, k)
    if not 1 <= e <= n:
        raise FormulaError(f"need 1 <= e <= n, got e={e}")
    total = Fraction(binom(n - j, e) * j + binom(j, e) * (n - j), binom(n, e))
    return float(total)


def qfi_erasure_cyclic_formula(n: int, k: int, e: int) -> float:
    """Average QFI of a bundled cycle (k >= 5 bundles of n/k) after 1 <= e < 2n/k erasures."""
    j = _bundle_size(n, k)
    if k < 5:
        raise FormulaError(f"cyclic erasure formula needs k >= 5, got k={k}")
    if not 1 <= e < 2 * j:
        raise FormulaError(f"need 1 <= e < 2j = {2 * j}, got e={e}")
    c = lambda a: binom(a, e)  # noqa: E731
    quad = (2 * c(n - 4 * j) - c(n - 5 * j)) * n * j
    lin = (2 * c(n - 2 * j) - c(n - 3 * j) - 2 * c(n - 4 * j) + c(n - 5 * j)) * n
    return float(Fraction(quad + lin, c(n)))
