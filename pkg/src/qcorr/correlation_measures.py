"""Entropies, closest classical states and discord for Bell-diagonal states.

All logarithms are base 2, so every quantity is in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell_state import BellDiagonalState, BlochSphereState, fwht, marginal_product, validate
from .errors import InfiniteDivergenceError, InvalidArgumentError, InvariantError
from .pauli_algebra import AbelianSubgroup, enumerate_abelian_subgroups

IDENTITY_TOL = 1e-12


def entropy(p) -> float:
    """Shannon entropy of a spectrum in bits, with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def relative_entropy(p, q) -> float:
    """``sum p log2(p / q)`` for commuting states given by their spectra.

    Raises :class:`InfiniteDivergenceError` when ``p`` has weight where ``q``
    vanishes.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise InvalidArgumentError(f"shape mismatch {p.shape} vs {q.shape}")
    support = p > 0
    if np.any(q[support] <= 0):
        bad = int(np.flatnonzero(support & (q <= 0))[0])
        raise InfiniteDivergenceError(f"p[{bad}]={p[bad]!r} > 0 where q vanishes")
    return float((p[support] * (np.log2(p[support]) - np.log2(q[support]))).sum())


def cross_entropy(p, q) -> float:
    """``-sum p log2 q``, the ``-Tr(rho log chi)`` term."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    support = p > 0
    if np.any(q[support] <= 0):
        raise InfiniteDivergenceError("cross entropy is infinite: support mismatch")
    return float(-(p[support] * np.log2(q[support])).sum())


# ---------------------------------------------------------------------------
# closest classical state


def _parity_table(nbits: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << nbits, dtype=np.uint64)).astype(np.int64) & 1


def syndromes(group: AbelianSubgroup) -> np.ndarray:
    """``m(i)`` for each index ``i``: the n-bit vector ``(i.a_1, ..., i.a_n) mod 2``.

    Packed MSB-first, so ``a_1`` contributes the top bit.
    """
    parity = _parity_table(2 * group.n)
    idx = np.arange(4**group.n)
    m = np.zeros_like(idx)
    for a in group.generators:
        m = (m << 1) | parity[idx & a]
    return m


@dataclass(frozen=True, eq=False)
class ClassicalState:
    """Projection of a Bell-diagonal state onto one commuting subgroup.

    ``q[m]`` is the eigenvalue on the coset with syndrome ``m``; each appears
    ``2**n`` times in ``full_spectrum``.
    """

    subgroup: AbelianSubgroup
    q: np.ndarray
    full_spectrum: np.ndarray

    @property
    def n(self) -> int:
        return self.subgroup.n

    @property
    def entropy(self) -> float:
        return entropy(self.full_spectrum)

    def tensor(self) -> np.ndarray:
        """The correlation tensor: ``t`` kept on the subgroup, zero elsewhere."""
        return fwht(self.full_spectrum)


def ccs_for_subgroup(state: BellDiagonalState, group: AbelianSubgroup) -> ClassicalState:
    """Closest classical state whose eigenbasis is fixed by ``group``.

    ``q_m = (1/4**n) sum_s (-1)^(m.s) t[sum_k s_k a_k]``: an ``n``-bit
    Walsh-Hadamard transform of the tensor restricted to the subgroup.
    """
    if group.n != state.n:
        raise InvalidArgumentError(f"subgroup for n={group.n} applied to an n={state.n} state")
    restricted = state.tensor[list(group.elements)]
    q = fwht(restricted) / 4**state.n
    q = np.clip(q, 0.0, None)
    labels = syndromes(group)
    full = q[labels]
    block = _block_average(state.spectrum, labels)
    if not np.allclose(full, block, rtol=0, atol=1e-12):
        raise InvariantError("classical spectrum differs from the coset average of the parent spectrum")
    return ClassicalState(subgroup=group, q=q, full_spectrum=full)


def _block_average(p: np.ndarray, labels: np.ndarray) -> np.ndarray:
    sums = np.bincount(labels, weights=p)
    counts = np.bincount(labels)
    return (sums / counts)[labels]


@dataclass(frozen=True)
class DiscordResult:
    bits: float
    ccs: ClassicalState

    def __iter__(self):
        # allows ``value, chi = discord(state)``
        return iter((self.bits, self.ccs))


def discord(state: BellDiagonalState) -> DiscordResult:
    """Relative-entropy discord ``min_G S(chi_G) - S(rho)`` over commuting subgroups.

    The cross term ``-Tr(rho log chi_G)`` equals ``S(chi_G)`` because
    ``log chi_G`` is constant on the cosets it averages over.  Ties go to the
    first subgroup in canonical order.
    """
    s_rho = entropy(state.spectrum)
    best = None
    for group in enumerate_abelian_subgroups(state.n):
        chi = ccs_for_subgroup(state, group)
        value = entropy(chi.full_spectrum)
        if best is None or value < best[0] - IDENTITY_TOL:
            best = (value, chi)
    value, chi = best
    return DiscordResult(bits=max(value - s_rho, 0.0), ccs=chi)


def bloch_discord_closed_form(state: BlochSphereState) -> float:
    """Discord of a Bloch-sphere state from its largest coefficient.

    A commuting subgroup can hold at most one of the Bloch-sphere terms, so
    the best classical state keeps only the largest ``|t|``.
    """
    t_max = max(float(np.abs(state.axis).max()), abs(state.t_all))
    neg = -entropy(state.spectrum)
    return neg - _xlog2x_half(1 - t_max) - _xlog2x_half(1 + t_max) + 2 * np.log2(state.N)


def _xlog2x_half(x: float) -> float:
    return 0.0 if x <= 0 else x / 2 * np.log2(x)


def total_mutual_information(state: BellDiagonalState) -> float:
    """``S(rho || pi_rho)`` with ``pi_rho`` the (uniform) product of marginals."""
    return relative_entropy(state.spectrum, marginal_product(state))


def classical_correlation(chi: ClassicalState) -> float:
    """``S(chi || chi_A (x) chi_B) = 2 log2 N - S(chi)``; marginals are uniform."""
    return 2 * chi.n - chi.entropy


def best_permutation_alignment(lam, mu) -> tuple[np.ndarray, float]:
    """Maximize ``sum_i lam_i log2 mu_perm(i)`` over permutations.

    By the rearrangement inequality the optimum pairs the sorted vectors.
    Returns ``(perm, value)`` with ``perm[i]`` the index into ``mu`` matched
    with ``lam[i]``.
    """
    lam = np.asarray(lam, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if lam.shape != mu.shape or lam.ndim != 1:
        raise InvalidArgumentError(f"need equal-length vectors, got {lam.shape} and {mu.shape}")
    perm = np.empty(lam.size, dtype=int)
    perm[np.argsort(-lam, kind="stable")] = np.argsort(-mu, kind="stable")
    matched = mu[perm]
    if np.any((lam > 0) & (matched <= 0)):
        raise InfiniteDivergenceError("a zero of mu must be paired with positive weight")
    live = lam > 0
    value = float((lam[live] * np.log2(matched[live])).sum())
    return perm, value


@dataclass(frozen=True)
class CorrelationReport:
    discord: float
    ccs: ClassicalState
    total_mutual_information: float
    classical_correlation: float
    entropy: float
    L_rho_check: float

    def to_dict(self) -> dict:
        return {
            "discord_bits": self.discord,
            "entropy_bits": self.entropy,
            "T_bits": self.total_mutual_information,
            "C_bits": self.classical_correlation,
            "L_rho_bits": self.L_rho_check,
            "ccs_subgroup": self.ccs.subgroup.labels(),
        }


def correlation_report(state: BellDiagonalState) -> CorrelationReport:
    value, chi = discord(state)
    l_rho = entropy(marginal_product(validate(chi.tensor()))) - entropy(marginal_product(state))
    return CorrelationReport(
        discord=value,
        ccs=chi,
        total_mutual_information=total_mutual_information(state),
        classical_correlation=classical_correlation(chi),
        entropy=entropy(state.spectrum),
        L_rho_check=l_rho,
    )

