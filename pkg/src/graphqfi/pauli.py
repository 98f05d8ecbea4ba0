"""Symplectic (bit-packed) Pauli operators and stabilizer groups.

A Pauli operator on ``n`` qubits is stored as two Python-int bitmasks
``x`` and ``z`` (bit ``q`` is qubit ``q``) and a phase. The letter at qubit
``q`` is I, X, Z, Y for ``(x_q, z_q)`` = (0,0), (1,0), (0,1), (1,1).

Two phase conventions are in play:

* ``sign_exp`` -- the user-visible phase ``i**sign_exp`` in front of the
  letter string (``-XZY`` has ``sign_exp == 2``).
* the XZ exponent ``r`` with ``P = i**r X^x Z^z``; since ``Y = iXZ`` the two
  differ by the number of Y letters. Products are computed in XZ form:
  ``X^a Z^b X^c Z^d = (-1)**|b & c| X^(a^c) Z^(b^d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .graph import Graph

ENUM_LIMIT = 24

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_SIGN_TEXT = {0: "", 1: "i", 2: "-", 3: "-i"}
_SIGN_PARSE = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}


class PauliError(ValueError):
    pass


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int
    z: int
    sign_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sign_exp", self.sign_exp % 4)
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise PauliError("mask wider than n qubits")

    @property
    def sign(self) -> complex:
        return (1, 1j, -1, -1j)[self.sign_exp]

    @property
    def xz_exp(self) -> int:
        return (self.sign_exp + _popcount(self.x & self.z)) % 4

    @property
    def is_hermitian(self) -> bool:
        return self.sign_exp % 2 == 0

    @property
    def letters(self) -> str:
        return "".join(_LETTERS[(self.x >> q) & 1, (self.z >> q) & 1] for q in range(self.n))

    def letter(self, q: int) -> str:
        return _LETTERS[(self.x >> q) & 1, (self.z >> q) & 1]

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def support(self) -> int:
        return self.x | self.z

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_xz(cls, n: int, x: int, z: int, xz_exp: int) -> "PauliOperator":
        return cls(n, x, z, xz_exp - _popcount(x & z))

    @classmethod
    def from_string(cls, text: str) -> "PauliOperator":
        text = text.strip()
        cut = 0
        while cut < len(text) and text[cut] in "+-i":
            cut += 1
        prefix, body = text[:cut], text[cut:]
        if prefix not in _SIGN_PARSE:
            raise PauliError(f"bad sign prefix {prefix!r}")
        x = z = 0
        for q, ch in enumerate(body):
            if ch not in _BITS:
                raise PauliError(f"bad Pauli letter {ch!r}")
            bx, bz = _BITS[ch]
            x |= bx << q
            z |= bz << q
        return cls(len(body), x, z, _SIGN_PARSE[prefix])

    @classmethod
    def single(cls, n: int, letters: dict[int, str], sign_exp: int = 0) -> "PauliOperator":
        x = z = 0
        for q, ch in letters.items():
            bx, bz = _BITS[ch]
            x |= bx << q
            z |= bz << q
        return cls(n, x, z, sign_exp)

    def __str__(self):
        return _SIGN_TEXT[self.sign_exp] + self.letters

    def __repr__(self):
        return f"PauliOperator({str(self)!r})"

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def symplectic(self) -> int:
        """Packed 2n-bit vector ``x | z << n``."""
        return self.x | (self.z << self.n)


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    if p.n != q.n:
        raise PauliError(f"dimension mismatch: {p.n} vs {q.n}")
    r = p.xz_exp + q.xz_exp + 2 * _popcount(p.z & q.x)
    return PauliOperator.from_xz(p.n, p.x ^ q.x, p.z ^ q.z, r)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    if p.n != q.n:
        raise PauliError(f"dimension mismatch: {p.n} vs {q.n}")
    return (_popcount(p.x & q.z) + _popcount(p.z & q.x)) % 2 == 0


def product(paulis: Sequence[PauliOperator], n: int) -> PauliOperator:
    acc = PauliOperator.identity(n)
    for p in paulis:
        acc = multiply(acc, p)
    return acc


class _Echelon:
    """Row-reduced generator vectors over GF(2), tracking which generators were combined."""

    def __init__(self, vectors: Sequence[int]):
        self.rows: list[tuple[int, int, int]] = []  # (pivot bit, vector, combo mask)
        self.rank = 0
        for idx, vec in enumerate(vectors):
            combo = 1 << idx
            vec, combo = self._reduce(vec, combo)
            if vec:
                self.rows.append((vec.bit_length() - 1, vec, combo))
                self.rank += 1

    def _reduce(self, vec: int, combo: int) -> tuple[int, int]:
        for pivot, row, row_combo in self.rows:
            if (vec >> pivot) & 1:
                vec ^= row
                combo ^= row_combo
        return vec, combo

    def solve(self, vec: int) -> int | None:
        """Combination mask expressing ``vec`` as a generator sum, or None."""
        residual, combo = self._reduce(vec, 0)
        return None if residual else combo


def gf2_rank(vectors: Sequence[int]) -> int:
    return _Echelon(vectors).rank


class StabilizerGroup:
    """Group generated by ``n`` independent, commuting, Hermitian Paulis."""

    def __init__(self, generators: Sequence[PauliOperator]):
        gens = tuple(generators)
        if not gens:
            raise PauliError("need at least one generator")
        n = gens[0].n
        for g in gens:
            if g.n != n:
                raise PauliError("generators act on different qubit counts")
            if not g.is_hermitian:
                raise PauliError(f"generator {g} is not Hermitian")
        if len(gens) != n:
            raise PauliError(f"need {n} generators, got {len(gens)}")
        for a in range(n):
            for b in range(a + 1, n):
                if not commutes(gens[a], gens[b]):
                    raise PauliError(f"generators {gens[a]} and {gens[b]} anticommute")
        self.n = n
        self.generators = gens
        self._echelon = _Echelon([g.symplectic() for g in gens])
        if self._echelon.rank != n:
            raise PauliError("generators are not independent")

    @classmethod
    def from_strings(cls, *texts: str) -> "StabilizerGroup":
        return cls([PauliOperator.from_string(t) for t in texts])

    def __repr__(self):
        return f"StabilizerGroup({[str(g) for g in self.generators]})"

    def element(self, combo: int) -> PauliOperator:
        return product([g for i, g in enumerate(self.generators) if (combo >> i) & 1], self.n)

    def lookup(self, x: int, z: int) -> PauliOperator | None:
        """The group element with letters given by masks ``x``, ``z`` (any sign), or None."""
        combo = self._echelon.solve(x | (z << self.n))
        if combo is None:
            return None
        return self.element(combo)

    def contains(self, p: PauliOperator) -> bool:
        found = self.lookup(p.x, p.z)
        return found is not None and found.sign_exp == p.sign_exp


def generators_from_graph(g: Graph) -> StabilizerGroup:
    gens = []
    for i in range(g.n):
        z = 0
        for j in g.neighbors(i):
            z |= 1 << j
        gens.append(PauliOperator(g.n, 1 << i, z, 0))
    return StabilizerGroup(gens)


def group_arrays(s: StabilizerGroup) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All group elements as ``(x, z, sign_exp)`` uint64/int arrays."""
    if s.n > ENUM_LIMIT:
        raise PauliError(f"group enumeration limited to n <= {ENUM_LIMIT}, got {s.n}")
    gx = np.array([g.x for g in s.generators], dtype=np.uint64)
    gz = np.array([g.z for g in s.generators], dtype=np.uint64)
    gr = np.array([g.xz_exp for g in s.generators], dtype=np.int64)
    x, z, r = kernels.group_products(gx, gz, gr)
    k = (r - np.bitwise_count(x & z).astype(np.int64)) % 4
    return x, z, k


def enumerate_group(s: StabilizerGroup) -> Iterator[PauliOperator]:
    """Yield every group element once, identity first."""
    x, z, k = group_arrays(s)
    for xi, zi, ki in zip(x.tolist(), z.tolist(), k.tolist()):
        yield PauliOperator(s.n, xi, zi, ki)


@dataclass(frozen=True)
class XFormReport:
    count_xixj: int
    has_bad_form: bool
    bad_witness: PauliOperator | None


def classify_x_forms(s: StabilizerGroup) -> XFormReport:
    """Count +X_iX_j elements and look for the forms ±X_i, -X_iX_j."""
    n = s.n
    witness = None
    for i in range(n):
        found = s.lookup(1 << i, 0)
        if found is not None:
            witness = found
            break
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            found = s.lookup((1 << i) | (1 << j), 0)
            if found is None:
                continue
            if found.sign_exp == 0:
                count += 1
            elif witness is None:
                witness = found
    return XFormReport(count, witness is not None, witness)
