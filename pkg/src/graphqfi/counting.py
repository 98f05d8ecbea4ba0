"""Exact stabilizer-state counts and the count of metrologically useful states."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .oracle import qfi_pure, stabilizer_state_vector
from .pauli import PauliError, PauliOperator, StabilizerGroup, commutes, gf2_rank

CENSUS_LIMIT = 3


class CountingError(ValueError):
    pass


def stabilizer_state_count(n: int) -> int:
    """Number of n-qubit stabilizer states, 2**n * prod_{k=1..n} (2**k + 1)."""
    if n < 0:
        raise CountingError("n must be >= 0")
    total = 1 << n
    for k in range(1, n + 1):
        total *= (1 << k) + 1
    return total


def threshold_k(n: int, epsilon: float) -> int:
    """ceil(n ** (1 - epsilon / 2)), robust to float noise at exact powers."""
    return max(1, math.ceil(n ** (1 - epsilon / 2) - 1e-9))


@dataclass(frozen=True)
class MetrologyBound:
    full: int
    simple: int
    k: int


def metrology_bound(n: int, epsilon: float) -> MetrologyBound:
    """Lower bound on states with QFI >= n**(2 - epsilon)."""
    if n < 2:
        raise CountingError("n must be >= 2")
    if not 0 < epsilon <= 2:
        raise CountingError("epsilon must lie in (0, 2]")
    k = threshold_k(n, epsilon)

    def term(j: int) -> int:
        return math.comb(n - 1, j - 1) * (1 << j) * stabilizer_state_count(n - j)

    return MetrologyBound(sum(term(j) for j in range(k, n + 1)), term(k), k)


def _all_groups(n: int):
    """Every n-qubit stabilizer group, once each."""
    vectors = range(1, 1 << (2 * n))
    paulis = {v: PauliOperator(n, v & ((1 << n) - 1), v >> n) for v in vectors}
    seen: set[frozenset[int]] = set()
    for combo in combinations(vectors, n):
        ops = [paulis[v] for v in combo]
        if gf2_rank(list(combo)) != n:
            continue
        if not all(commutes(a, b) for a, b in combinations(ops, 2)):
            continue
        span = frozenset(_span(combo))
        if span in seen:
            continue
        seen.add(span)
        for signs in range(1 << n):
            yield StabilizerGroup([PauliOperator(n, p.x, p.z, 2 * ((signs >> i) & 1)) for i, p in enumerate(ops)])


def _span(vectors) -> set[int]:
    out = {0}
    for v in vectors:
        out |= {u ^ v for u in out}
    return out


def census(n: int) -> list[tuple[StabilizerGroup, float]]:
    """All n-qubit stabilizer states with their oracle QFI."""
    if not 1 <= n <= CENSUS_LIMIT:
        raise CountingError(f"census limited to 1 <= n <= {CENSUS_LIMIT}, got {n}")
    return [(s, qfi_pure(stabilizer_state_vector(s))) for s in _all_groups(n)]


def empirical_census(n: int, threshold: float) -> int:
    """Number of n-qubit stabilizer states whose QFI is at least ``threshold``."""
    return sum(1 for _, q in census(n) if q >= threshold - 1e-9)


def useful_construction(n: int, k: int, p_letters: str, rest: StabilizerGroup | None = None) -> StabilizerGroup:
    """Group <X_0X_1, ..., X_0X_{k-1}, P, P g_1, ..., P g_{n-k}>.

    ``p_letters`` is a Y/Z string of length k placed on qubits 0..k-1 and
    ``rest`` a stabilizer group on the remaining n-k qubits.
    """
    if not 1 <= k <= n:
        raise CountingError("need 1 <= k <= n")
    if len(p_letters) != k or set(p_letters) - set("YZ"):
        raise CountingError("P must be a length-k string over {Y, Z}")
    if (rest is None) != (k == n):
        raise CountingError("rest must act on exactly n - k qubits")
    gens = [PauliOperator(n, 1 | (1 << i), 0) for i in range(1, k)]
    p = PauliOperator.from_string(p_letters + "I" * (n - k))
    gens.append(p)
    if rest is not None:
        if rest.n != n - k:
            raise CountingError("rest must act on exactly n - k qubits")
        for g in rest.generators:
            shifted = PauliOperator(n, g.x << k, g.z << k, g.sign_exp)
            gens.append(p * shifted)
    try:
        return StabilizerGroup(gens)
    except PauliError as exc:
        raise CountingError(f"construction failed: {exc}") from exc
