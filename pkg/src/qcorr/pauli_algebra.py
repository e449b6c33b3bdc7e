"""Dirac gamma matrices, exponent labels and commuting subgroups.

Exponent vectors are 2n-bit strings ``a = a_1 ... a_2n`` labelling the group
element ``Gamma_a = gamma_1^{a_1} ... gamma_2n^{a_2n}``.  Internally they are
stored as integers with ``a_1`` as the most significant bit; this is the
index convention used everywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError

MAX_GAMMA_DIM = 8
MAX_SUBGROUP_N = 4

SIGMA = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# single-qubit products: (left, right) -> (phase, result)
_PAULI_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}
_LETTER_FROM_XZ = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_XZ_FROM_LETTER = {v: k for k, v in _LETTER_FROM_XZ.items()}


# ---------------------------------------------------------------------------
# exponent vectors


@dataclass(frozen=True)
class ExponentVector:
    """A 2n-bit exponent label, ``bits[0]`` is ``a_1``."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise InvalidArgumentError(f"exponent bits must be 0/1, got {self.bits}")

    @classmethod
    def coerce(cls, value: "ExponentLike", nbits: int | None = None) -> "ExponentVector":
        if isinstance(value, ExponentVector):
            vec = value
        elif isinstance(value, str):
            if not value or set(value) - {"0", "1"}:
                raise InvalidArgumentError(f"not a bitstring: {value!r}")
            vec = cls(tuple(int(c) for c in value))
        elif isinstance(value, (int, np.integer)):
            if nbits is None:
                raise InvalidArgumentError("integer exponent needs an explicit bit length")
            if value < 0 or value >= 1 << nbits:
                raise InvalidArgumentError(f"{value} does not fit in {nbits} bits")
            vec = cls(tuple((int(value) >> (nbits - 1 - k)) & 1 for k in range(nbits)))
        else:
            vec = cls(tuple(int(b) for b in value))
        if nbits is not None and len(vec) != nbits:
            raise InvalidArgumentError(f"expected {nbits} bits, got {len(vec)}")
        return vec

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @property
    def value(self) -> int:
        return reduce(lambda acc, b: (acc << 1) | b, self.bits, 0)

    @property
    def weight(self) -> int:
        return sum(self.bits)


ExponentLike = Union[ExponentVector, str, int, Sequence[int]]


def bits_to_int(bits: str) -> int:
    return ExponentVector.coerce(bits).value


def int_to_bits(value: int, nbits: int) -> str:
    return format(value, f"0{nbits}b")


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def exponent_form(a: int, b: int) -> int:
    """Mod-2 commutation form on integer labels: 0 means Gamma_a, Gamma_b commute."""
    return (_parity(a) & _parity(b)) ^ _parity(a & b)


def exponent_commutes(a: ExponentLike, b: ExponentLike) -> bool:
    """Return True iff ``Gamma_a`` and ``Gamma_b`` commute.

    Reordering the product ``Gamma_a Gamma_b`` into ``Gamma_b Gamma_a``
    passes every factor of one past every distinct factor of the other, so
    the sign is ``(-1)^(|a||b| - a.b)``.
    """
    va = ExponentVector.coerce(a)
    vb = ExponentVector.coerce(b)
    if len(va) != len(vb):
        raise InvalidArgumentError(f"length mismatch: {len(va)} vs {len(vb)}")
    return exponent_form(va.value, vb.value) == 0


# ---------------------------------------------------------------------------
# Pauli strings


@dataclass(frozen=True)
class PauliString:
    """``phase * P_1 (x) ... (x) P_n`` in the x/z bit encoding (Y sets both bits)."""

    xbits: tuple[int, ...]
    zbits: tuple[int, ...]
    phase: complex = 1

    def __post_init__(self):
        if len(self.xbits) != len(self.zbits):
            raise InvalidArgumentError("xbits and zbits differ in length")
        if self.phase not in (1, -1, 1j, -1j):
            raise InvalidArgumentError(f"phase must be a power of i, got {self.phase}")

    @classmethod
    def from_label(cls, label: str, phase: complex = 1) -> "PauliString":
        label = label.upper()
        try:
            xz = [_XZ_FROM_LETTER[c] for c in label]
        except KeyError as exc:
            raise InvalidArgumentError(f"bad Pauli label {label!r}") from exc
        return cls(tuple(x for x, _ in xz), tuple(z for _, z in xz), phase)

    @classmethod
    def from_row(cls, row: str, phase: complex = 1) -> "PauliString":
        """Parse the ``"xbits|zbits"`` row-vector notation, e.g. ``"10|00"``."""
        xs, _, zs = row.partition("|")
        return cls(tuple(int(c) for c in xs), tuple(int(c) for c in zs), phase)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls((0,) * n, (0,) * n, 1)

    @property
    def n(self) -> int:
        return len(self.xbits)

    @property
    def label(self) -> str:
        return "".join(_LETTER_FROM_XZ[xz] for xz in zip(self.xbits, self.zbits))

    def row(self) -> np.ndarray:
        """The binary row vector ``[xbits | zbits]``."""
        return np.array(self.xbits + self.zbits, dtype=np.int64)

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise InvalidArgumentError("Pauli strings act on different qubit counts")
        phase = self.phase * other.phase
        letters = []
        for a, b in zip(self.label, other.label):
            ph, c = _PAULI_MUL[(a, b)]
            phase *= ph
            letters.append(c)
        return PauliString.from_label("".join(letters), _snap_phase(phase))

    def tensor(self, other: "PauliString") -> "PauliString":
        return PauliString(
            self.xbits + other.xbits, self.zbits + other.zbits, _snap_phase(self.phase * other.phase)
        )

    def to_matrix(self) -> np.ndarray:
        mats = [SIGMA[c] for c in self.label] or [np.eye(1, dtype=complex)]
        return self.phase * reduce(np.kron, mats)

    def __str__(self) -> str:
        sign = {1: "+", -1: "-", 1j: "+i", -1j: "-i"}[self.phase]
        return f"{sign}{self.label}"


def _snap_phase(phase: complex) -> complex:
    for p in (1, -1, 1j, -1j):
        if abs(phase - p) < 1e-9:
            return p
    raise InvalidArgumentError(f"phase {phase} is not a power of i")


def symplectic_matrix(n: int) -> np.ndarray:
    """The 2n x 2n block matrix [[0, I], [I, 0]]."""
    eye = np.eye(n, dtype=np.int64)
    zero = np.zeros((n, n), dtype=np.int64)
    return np.block([[zero, eye], [eye, zero]])


def symplectic_commutes(p: PauliString, q: PauliString) -> bool:
    """True iff ``r(p) Lambda r(q)^T = 0 (mod 2)``."""
    if p.n != q.n:
        raise InvalidArgumentError(f"size mismatch: {p.n} vs {q.n} qubits")
    return int(p.row() @ symplectic_matrix(p.n) @ q.row()) % 2 == 0


# ---------------------------------------------------------------------------
# gamma matrices


@dataclass(frozen=True)
class GammaSet:
    """Hermitian generators of the Clifford algebra in dimension ``2**(d/2)``.

    ``matrices[k]`` is ``gamma_{k+1}``; the last entry is ``gamma_s``.
    ``paulis`` holds the same operators as Pauli strings.
    """

    d: int
    matrices: tuple[np.ndarray, ...]
    paulis: tuple[PauliString, ...]

    @property
    def n(self) -> int:
        return self.d // 2

    @property
    def size(self) -> int:
        return 2 ** (self.d // 2)

    @property
    def gamma_s(self) -> np.ndarray:
        return self.matrices[-1]

    def gamma(self, i: int) -> np.ndarray:
        """1-based access, ``gamma(d + 1)`` is ``gamma_s``."""
        return self.matrices[i - 1]


def _gamma_s(gammas: Sequence[PauliString], d: int) -> PauliString:
    product = reduce(lambda acc, p: acc * p, gammas[:d])
    return PauliString(product.xbits, product.zbits, _snap_phase(product.phase * (1j) ** (-d // 2)))


def build_gamma_set(d: int) -> GammaSet:
    """Build ``gamma_1 .. gamma_d`` and ``gamma_s`` by the ``d -> d + 2`` recursion.

    ``gamma_i^(d+2) = sigma_1 (x) gamma_i^(d)`` for ``i <= d + 1`` and
    ``gamma_{d+2} = sigma_2 (x) I``.  ``gamma_s`` is recomputed at the end as
    ``i^(-d/2) gamma_1 ... gamma_d``.
    """
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d <= 0 or d % 2:
        raise InvalidArgumentError(f"d must be a positive even integer, got {d!r}")
    if d > MAX_GAMMA_DIM:
        raise ResourceLimitError(f"d={d} exceeds the supported maximum {MAX_GAMMA_DIM}")

    x, y = PauliString.from_label("X"), PauliString.from_label("Y")
    full = [PauliString.from_label(c) for c in "XYZ"]
    for m in range(2, d, 2):
        full = [x.tensor(p) for p in full] + [y.tensor(PauliString.identity(m // 2))]
        full.append(_gamma_s(full, m + 2))
    paulis = full
    return GammaSet(d=d, matrices=tuple(p.to_matrix() for p in paulis), paulis=tuple(paulis))


@dataclass(frozen=True)
class CliffordReport:
    """Maximum absolute violation of each gamma-set identity."""

    anticommutation: float
    hermiticity: float
    transpose_pattern: float
    gamma_s_product: float

    @property
    def ok(self) -> bool:
        return max(self.anticommutation, self.hermiticity, self.transpose_pattern, self.gamma_s_product) == 0


def verify_clifford(g: GammaSet) -> CliffordReport:
    mats = g.matrices
    eye = np.eye(g.size)
    anti = herm = trans = 0.0
    for i, gi in enumerate(mats):
        herm = max(herm, np.abs(gi - gi.conj().T).max())
        # 0-based i -> 1-based index i+1, sign (-1)^(i+2) = (-1)^i
        trans = max(trans, np.abs(gi.T - (-1) ** i * gi).max())
        for j, gj in enumerate(mats):
            target = 2 * eye if i == j else 0
            anti = max(anti, np.abs(gi @ gj + gj @ gi - target).max())
    prod = reduce(np.matmul, mats[:-1]) * (1j) ** (-g.d // 2)
    return CliffordReport(float(anti), float(herm), float(trans), float(np.abs(prod - g.gamma_s).max()))


def group_element(g: GammaSet, a: ExponentLike) -> np.ndarray:
    """Dense ``Gamma_a = gamma_1^{a_1} ... gamma_d^{a_d}``."""
    vec = ExponentVector.coerce(a, g.d if not isinstance(a, (str, ExponentVector)) else None)
    if len(vec) != g.d:
        raise InvalidArgumentError(f"exponent of length {len(vec)} for gamma set d={g.d}")
    out = np.eye(g.size, dtype=complex)
    for bit, gk in zip(vec.bits, g.matrices):
        if bit:
            out = out @ gk
    return out


def exponent_to_pauli(g: GammaSet, a: ExponentLike) -> PauliString:
    vec = ExponentVector.coerce(a, g.d if not isinstance(a, (str, ExponentVector)) else None)
    if len(vec) != g.d:
        raise InvalidArgumentError(f"exponent of length {len(vec)} for gamma set d={g.d}")
    out = PauliString.identity(g.n)
    for bit, p in zip(vec.bits, g.paulis):
        if bit:
            out = out * p
    return out


# ---------------------------------------------------------------------------
# abelian subgroups


def gf2_rref(rows: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon form of integer bit-rows over GF(2), zero rows dropped.

    Rows come out ordered by pivot, most significant pivot first.
    """
    basis: list[int] = []
    for r in rows:
        for b in sorted(basis, reverse=True):
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    basis.sort(reverse=True)
    for i in range(len(basis)):
        top = basis[i].bit_length() - 1
        for j in range(len(basis)):
            if j != i and (basis[j] >> top) & 1:
                basis[j] ^= basis[i]
    return tuple(sorted(basis, reverse=True))


def span(generators: Sequence[int]) -> tuple[int, ...]:
    """All GF(2) combinations ``sum_k s_k a_k`` indexed by the integer ``s``.

    ``s`` uses the same MSB-first convention: bit ``k`` of ``s`` counted from
    the top selects ``generators[k]``.
    """
    k = len(generators)
    out = []
    for s in range(1 << k):
        v = 0
        for idx in range(k):
            if (s >> (k - 1 - idx)) & 1:
                v ^= generators[idx]
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class AbelianSubgroup:
    """n independent, pairwise commuting exponent vectors on 2n bits."""

    n: int
    generators: tuple[int, ...]
    canonical_form: tuple[int, ...]

    @classmethod
    def from_generators(cls, n: int, generators: Sequence[ExponentLike]) -> "AbelianSubgroup":
        gens = tuple(ExponentVector.coerce(a, 2 * n).value for a in generators)
        canon = gf2_rref(gens)
        if len(canon) != len(gens):
            raise InvalidArgumentError("generators are linearly dependent")
        if len(gens) != n:
            raise InvalidArgumentError(f"need {n} generators, got {len(gens)}")
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                if exponent_form(a, b):
                    raise InvalidArgumentError(
                        f"{int_to_bits(a, 2 * n)} and {int_to_bits(b, 2 * n)} do not commute"
                    )
        return cls(n, gens, canon)

    @property
    def elements(self) -> tuple[int, ...]:
        return span(self.generators)

    def labels(self) -> list[str]:
        return [int_to_bits(a, 2 * self.n) for a in self.canonical_form]

    def __contains__(self, a: int) -> bool:
        return a in set(self.elements)

    def sort_key(self) -> tuple[str, ...]:
        return tuple(self.labels())


@lru_cache(maxsize=None)
def enumerate_abelian_subgroups(n: int) -> tuple[AbelianSubgroup, ...]:
    """All maximal commuting subspaces of exponent labels for ``n`` qubit pairs.

    Built level by level: each isotropic subspace is extended by every
    commuting vector outside it, deduplicated on its RREF basis.
    """
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if n > MAX_SUBGROUP_N:
        raise ResourceLimitError(f"exhaustive subgroup search is capped at n={MAX_SUBGROUP_N}")
    nbits = 2 * n
    size = 1 << nbits
    # commuting[b] has bit v set iff Gamma_v commutes with Gamma_b
    commuting = [sum(1 << v for v in range(size) if not exponent_form(v, b)) for b in range(size)]
    level: dict[tuple[int, ...], frozenset[int]] = {(): frozenset({0})}
    for _ in range(n):
        nxt: dict[tuple[int, ...], frozenset[int]] = {}
        for basis, members in level.items():
            mask = reduce(lambda acc, b: acc & commuting[b], basis, (1 << size) - 2)
            for v in range(1, size):
                if not (mask >> v) & 1 or v in members:
                    continue
                # one representative per coset v + span
                if any((v ^ m) < v for m in members):
                    continue
                canon = gf2_rref(basis + (v,))
                if canon not in nxt:
                    nxt[canon] = members | {m ^ v for m in members}
        level = nxt
    groups = [AbelianSubgroup(n, canon, canon) for canon in level]
    return tuple(sorted(groups, key=AbelianSubgroup.sort_key))
