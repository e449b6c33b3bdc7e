"""Bell-diagonal states on two ``2**n``-dimensional parties.

A state is stored by its correlation tensor ``t``: a real vector of length
``4**n`` whose entry at exponent label ``a`` is the coefficient of
``g_a = Gamma_a (x) Gamma_a`` in

    rho = (1 / N**2) * sum_a t[a] g_a,        N = 2**n.

Its eigenvalues on the common projectors ``pi_i`` are the Walsh-Hadamard
transform ``p = H t / N**2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import (
    InvalidArgumentError,
    InvariantError,
    NormalizationError,
    NotAStateError,
    ResourceLimitError,
)
from .pauli_algebra import GammaSet, build_gamma_set, group_element

POSITIVITY_TOL = 1e-12
NORMALIZATION_TOL = 1e-12
MAX_DENSE_N = 2


def fwht(x: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform along the last axis.

    ``out[i] = sum_j (-1)^popcount(i & j) x[j]`` for a last axis of length
    ``2**m``; cost ``O(m 2**m)``.
    """
    x = np.asarray(x, dtype=float)
    size = x.shape[-1]
    m = size.bit_length() - 1
    if size != 1 << m:
        raise InvalidArgumentError(f"length {size} is not a power of two")
    out = x.reshape(x.shape[:-1] + (2,) * m).copy()
    lead = x.ndim - 1
    for axis in range(lead, lead + m):
        a = np.take(out, 0, axis=axis)
        b = np.take(out, 1, axis=axis)
        out = np.stack((a + b, a - b), axis=axis)
    return out.reshape(x.shape)


def n_from_length(length: int) -> int:
    n = (length.bit_length() - 1) // 2
    if length != 4**n or n < 1:
        raise InvalidArgumentError(f"length {length} is not 4**n for a positive n")
    return n


def spectrum_from_tensor(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return fwht(t) / t.shape[-1]


def tensor_from_spectrum(p) -> np.ndarray:
    return fwht(np.asarray(p, dtype=float))


@dataclass(frozen=True, eq=False)
class BellDiagonalState:
    """A validated Bell-diagonal state; construct through :func:`validate`."""

    n: int
    tensor: np.ndarray
    spectrum: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return 2**self.n

    @property
    def nbits(self) -> int:
        return 2 * self.n


@dataclass(frozen=True, eq=False)
class BlochSphereState(BellDiagonalState):
    """Generalized Bloch-sphere state: only ``g_k`` and ``gamma_s (x) gamma_s`` terms.

    ``axis[k]`` multiplies ``g_{k+1}``; ``t_all`` multiplies
    ``gamma_s (x) gamma_s = (-1)^n g_{1...1}``, so the stored tensor entry at
    the all-ones label is ``(-1)^n t_all``.
    """

    axis: np.ndarray = field(default=None, repr=True)
    t_all: float = 0.0

    @property
    def coefficient_bound(self) -> float:
        return float(np.abs(self.axis).sum() + abs(self.t_all))

    @property
    def is_separable(self) -> bool:
        by_coefficients = self.coefficient_bound <= 1 + POSITIVITY_TOL
        by_spectrum = self.spectrum.max() <= (2 + POSITIVITY_TOL) / self.N**2
        if by_coefficients != by_spectrum:
            raise InvariantError(
                f"separability tests disagree: bound={self.coefficient_bound!r}, "
                f"max eigenvalue={self.spectrum.max()!r}"
            )
        return by_coefficients


def validate(t) -> BellDiagonalState:
    """Check normalization and positivity and return the state.

    Spectral values in ``[-POSITIVITY_TOL, 0)`` are clamped to zero.
    """
    t = np.array(t, dtype=float)
    if t.ndim != 1:
        raise InvalidArgumentError("correlation tensor must be one-dimensional")
    n = n_from_length(t.size)
    if abs(t[0] - 1) > NORMALIZATION_TOL:
        raise NormalizationError(f"normalization violated: identity coefficient must be 1, got {t[0]!r}")
    t[0] = 1.0
    p = spectrum_from_tensor(t)
    worst = int(np.argmin(p))
    if p[worst] < -POSITIVITY_TOL:
        raise NotAStateError(worst, float(p[worst]), 2 * n)
    p = np.clip(p, 0.0, None)
    t.flags.writeable = False
    p.flags.writeable = False
    return BellDiagonalState(n=n, tensor=t, spectrum=p)


def state_from_spectrum(p) -> BellDiagonalState:
    p = np.asarray(p, dtype=float)
    if abs(p.sum() - 1) > NORMALIZATION_TOL:
        raise NormalizationError(f"spectrum sums to {p.sum()!r}")
    return validate(tensor_from_spectrum(p))


def tensor_from_mapping(n: int, coefficients: Mapping[str, float]) -> np.ndarray:
    """Dense tensor from ``{"bitstring": value}``; missing labels are 0, identity 1."""
    if not isinstance(n, int) or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    nbits = 2 * n
    t = np.zeros(4**n)
    t[0] = 1.0
    for key, value in coefficients.items():
        if len(key) != nbits or set(key) - {"0", "1"}:
            raise InvalidArgumentError(f"key {key!r} is not a {nbits}-bit exponent label")
        t[int(key, 2)] = float(value)
    return t


def all_ones(n: int) -> int:
    return 4**n - 1


def axis_label(n: int, k: int) -> int:
    """Integer label of the weight-one exponent with bit ``k`` (0-based) set."""
    return 1 << (2 * n - 1 - k)


def bloch_tensor(axis, t_all: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    if axis.ndim != 1 or axis.size == 0 or axis.size % 2:
        raise InvalidArgumentError(f"axis must have even length 2n, got shape {axis.shape}")
    n = axis.size // 2
    t = np.zeros(4**n)
    t[0] = 1.0
    for k, value in enumerate(axis):
        t[axis_label(n, k)] = value
    t[all_ones(n)] += (-1) ** n * t_all
    return t


def bloch_state(axis, t_all: float) -> BlochSphereState:
    base = validate(bloch_tensor(axis, t_all))
    axis = np.array(axis, dtype=float)
    axis.flags.writeable = False
    return BlochSphereState(
        n=base.n, tensor=base.tensor, spectrum=base.spectrum, axis=axis, t_all=float(t_all)
    )


def _check_dense(n: int) -> None:
    if n > MAX_DENSE_N:
        raise ResourceLimitError(f"dense matrices are limited to n <= {MAX_DENSE_N}, got n={n}")


def g_operators(n: int, gammas: GammaSet | None = None) -> list[np.ndarray]:
    """Dense ``g_a = Gamma_a (x) Gamma_a`` for every label ``a``."""
    _check_dense(n)
    gammas = gammas or build_gamma_set(2 * n)
    out = []
    for a in range(4**n):
        ga = group_element(gammas, a)
        out.append(np.kron(ga, ga))
    return out


def materialize_tensor(t, gammas: GammaSet | None = None) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    n = n_from_length(t.size)
    ops = g_operators(n, gammas)
    return sum(c * g for c, g in zip(t, ops)) / 4**n


def materialize(state: BellDiagonalState, gammas: GammaSet | None = None) -> np.ndarray:
    """Dense density matrix of size ``N**2``, only for ``n <= 2``."""
    return materialize_tensor(state.tensor, gammas)


def projectors(n: int, gammas: GammaSet | None = None) -> list[np.ndarray]:
    """Dense ``pi_i = (1/N**2) sum_j (-1)^(i.j) g_j`` for every index ``i``."""
    ops = g_operators(n, gammas)
    size = 4**n
    signs = 1 - 2 * (np.array([[bin(i & j).count("1") & 1 for j in range(size)] for i in range(size)]))
    return [sum(s * g for s, g in zip(row, ops)) / size for row in signs]


def marginal_product(state: BellDiagonalState) -> np.ndarray:
    """Spectrum of the product of marginals, which is maximally mixed.

    Every ``Gamma_a`` with ``a != 0`` is traceless, so both reduced states are
    ``I / N`` regardless of ``t``.
    """
    return np.full(4**state.n, 1.0 / 4**state.n)
