"""Entangled states with a known closest separable state.

Starting from a separable Bloch-sphere state ``sigma`` on the boundary of the
separable set and an entanglement witness ``w`` of the family below,

    rho(x) = sigma - x * L_sigma^{-1}(w),       0 < x <= x_max,

is entangled and has ``sigma`` as its closest separable state.  Everything is
diagonal in the common projector basis, so the family is handled through
spectra; dense routes for ``n <= 2`` exist to cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell_state import (
    BellDiagonalState,
    BlochSphereState,
    all_ones,
    axis_label,
    bloch_state,
    projectors,
    state_from_spectrum,
)
from .correlation_measures import (
    classical_correlation,
    discord,
    relative_entropy,
    total_mutual_information,
)
from .errors import (
    DomainError,
    InvalidArgumentError,
    InvariantError,
    PreconditionError,
    ResourceLimitError,
    SingularMapError,
    UnboundedFamilyError,
)
from .pauli_algebra import GammaSet, build_gamma_set, int_to_bits

MAX_WITNESS_N = 4
TRACE_TOL = 1e-12
GAP_TOL = 1e-9


def _popcount(x):
    return np.bitwise_count(np.asarray(x, dtype=np.uint64)).astype(np.int64)


def witness_scale(n: int) -> float:
    return 1.0 / (2**n * math.sqrt(2 * (n + 1)))


@dataclass(frozen=True, eq=False)
class WitnessSpec:
    n: int
    sign_bits: int
    eigenvalues: np.ndarray
    scale: float

    @property
    def label(self) -> str:
        return int_to_bits(self.sign_bits, 2 * self.n)


def witness_brackets(n: int, sign_bits: int) -> np.ndarray:
    """Integer brackets ``1 + sum_k (-1)^(i_k + j_k) - (-1)^(sum i + sum j)`` per ``j``."""
    flips = _popcount(np.arange(4**n) ^ sign_bits)
    return 1 + (2 * n - 2 * flips) - (1 - 2 * (flips & 1))


def witness(n: int, sign_bits: int | str = 0) -> WitnessSpec:
    """Eigenvalues of the witness ``w_{i_1...i_2n}`` on the projector basis."""
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if n > MAX_WITNESS_N:
        raise ResourceLimitError(f"witness family supported up to n={MAX_WITNESS_N}")
    if isinstance(sign_bits, str):
        if len(sign_bits) != 2 * n or set(sign_bits) - {"0", "1"}:
            raise InvalidArgumentError(f"sign bits {sign_bits!r} are not a {2 * n}-bit string")
        sign_bits = int(sign_bits, 2)
    if not 0 <= sign_bits < 4**n:
        raise InvalidArgumentError(f"sign bits {sign_bits} out of range for n={n}")
    c = witness_scale(n)
    lam = c * witness_brackets(n, sign_bits)
    norm = float((lam**2).sum())
    if abs(norm - 1) > 1e-12:
        raise InvariantError(f"witness normalization is {norm!r}")
    lam.flags.writeable = False
    return WitnessSpec(n=n, sign_bits=sign_bits, eigenvalues=lam, scale=c)


def witness_matrix(w: WitnessSpec, gammas: GammaSet | None = None) -> np.ndarray:
    """Dense witness operator built from gamma matrices, ``n <= 2``."""
    if w.n > 2:
        raise ResourceLimitError("dense witness limited to n <= 2")
    n = w.n
    gammas = gammas or build_gamma_set(2 * n)
    bits = [(w.sign_bits >> (2 * n - 1 - k)) & 1 for k in range(2 * n)]
    out = np.eye(4**n, dtype=complex)
    for k, bit in enumerate(bits):
        gk = gammas.matrices[k]
        out += (-1) ** bit * np.kron(gk, gk)
    gs = gammas.gamma_s
    out -= (-1j) ** (2 * n) * (-1) ** sum(bits) * np.kron(gs, gs)
    return w.scale * out


def _check_n(sigma: BellDiagonalState, w: WitnessSpec) -> None:
    if sigma.n != w.n:
        raise InvalidArgumentError(f"state has n={sigma.n}, witness n={w.n}")


def trace_condition(sigma: BellDiagonalState, w: WitnessSpec) -> float:
    """``Tr L_sigma^{-1}(w) = sum_j lambda_j p_j``; zero on the witness's boundary face."""
    _check_n(sigma, w)
    residual = float(w.eigenvalues @ sigma.spectrum)
    # same quantity from the tensor entries the witness touches
    n = sigma.n
    t = sigma.tensor
    signs = [1 - 2 * ((w.sign_bits >> (2 * n - 1 - k)) & 1) for k in range(2 * n)]
    parity = 1 - 2 * (bin(w.sign_bits).count("1") & 1)
    linear = sum(s * t[axis_label(n, k)] for k, s in enumerate(signs))
    by_tensor = w.scale * (1 + linear - parity * t[all_ones(n)])
    if abs(by_tensor - residual) > 1e-12:
        raise InvariantError(f"trace condition routes disagree: {residual!r} vs {by_tensor!r}")
    return residual


def l_inverse_apply(sigma: BellDiagonalState, w: WitnessSpec) -> np.ndarray:
    """Diagonal of ``L_sigma^{-1}(w)`` on the projector basis, ``lambda_j p_j``."""
    _check_n(sigma, w)
    if np.any(sigma.spectrum <= 0):
        j = int(np.argmin(sigma.spectrum))
        raise SingularMapError(
            f"sigma has a zero eigenvalue at {int_to_bits(j, 2 * sigma.n)}; log-mean undefined"
        )
    return w.eigenvalues * sigma.spectrum


def log_mean_matrix(p: np.ndarray) -> np.ndarray:
    """``(p_k - p_l) / (ln p_k - ln p_l)``, with ``p_k`` on coinciding values."""
    pk = p[:, None]
    pl = p[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (pk - pl) / (np.log(pk) - np.log(pl))
    same = np.isclose(pk, pl, rtol=0, atol=1e-15) | ~np.isfinite(out)
    return np.where(same, np.broadcast_to(pk, out.shape), out)


def _eigenbasis(n: int, gammas: GammaSet | None) -> np.ndarray:
    """Unitary whose column ``j`` spans the range of ``pi_j``."""
    cols = []
    for pi in projectors(n, gammas):
        vals, vecs = np.linalg.eigh(pi)
        cols.append(vecs[:, -1])
    return np.column_stack(cols)


def l_inverse_apply_dense(
    sigma: BellDiagonalState, w: WitnessSpec, gammas: GammaSet | None = None
) -> np.ndarray:
    """``L_sigma^{-1}(w)`` as a dense matrix via the entrywise product in sigma's eigenbasis."""
    _check_n(sigma, w)
    if sigma.n > 2:
        raise ResourceLimitError("dense inverse map limited to n <= 2")
    if np.any(sigma.spectrum <= 0):
        raise SingularMapError("sigma has a zero eigenvalue; log-mean undefined")
    u = _eigenbasis(sigma.n, gammas)
    w_eig = u.conj().T @ witness_matrix(w, gammas) @ u
    return u @ (w_eig * log_mean_matrix(sigma.spectrum)) @ u.conj().T


def l_apply_dense(sigma: BellDiagonalState, beta: np.ndarray, gammas: GammaSet | None = None) -> np.ndarray:
    """Forward map ``L_sigma``: entrywise ``(ln a_k - ln a_l) / (a_k - a_l)``."""
    u = _eigenbasis(sigma.n, gammas)
    b = u.conj().T @ beta @ u
    return u @ (b / log_mean_matrix(sigma.spectrum)) @ u.conj().T


@dataclass(frozen=True, eq=False)
class CssFamilyPoint:
    sigma: BellDiagonalState
    witness: WitnessSpec
    x: float
    rho_spectrum: np.ndarray

    def rho(self) -> BellDiagonalState:
        return state_from_spectrum(self.rho_spectrum)


def _require_face(sigma: BellDiagonalState, w: WitnessSpec) -> None:
    residual = trace_condition(sigma, w)
    if abs(residual) > TRACE_TOL:
        raise PreconditionError(f"trace condition violated: residual {residual:.12g}")


def x_max(sigma: BellDiagonalState, w: WitnessSpec) -> float:
    """Largest ``x`` keeping ``rho(x)`` positive: the first eigenvalue reaching zero."""
    _require_face(sigma, w)
    active = (w.eigenvalues > 0) & (sigma.spectrum > 0)
    if not np.any(active):
        raise UnboundedFamilyError("no positive witness eigenvalue on the support of sigma")
    return float((1.0 / w.eigenvalues[active]).min())


def rho_of_x(sigma: BellDiagonalState, w: WitnessSpec, x: float) -> CssFamilyPoint:
    limit = x_max(sigma, w)
    if not 0 < x <= limit * (1 + 1e-12):
        raise DomainError(f"x={x!r} outside (0, {limit!r}]")
    p = sigma.spectrum * (1 - x * w.eigenvalues)
    if p.min() < -1e-12:
        raise InvariantError(f"rho(x) has eigenvalue {p.min()!r}")
    p = np.clip(p, 0.0, None)
    if abs(p.sum() - 1) > 1e-12:
        raise InvariantError(f"rho(x) has trace {p.sum()!r}")
    p.flags.writeable = False
    return CssFamilyPoint(sigma=sigma, witness=w, x=float(x), rho_spectrum=p)


def _plogp(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p, dtype=float)
    nz = p > 0
    out[nz] = p[nz] * np.log2(p[nz])
    return out


def gap_analytic(sigma: BellDiagonalState, w: WitnessSpec, x: float) -> float:
    """``E + Q + C_sigma - T_rho = x sum_j lambda_j p_j log2 p_j`` (``0 log 0 = 0``)."""
    _check_n(sigma, w)
    return float(x * (w.eigenvalues @ _plogp(sigma.spectrum)))


@dataclass(frozen=True)
class GapReport:
    x: float
    E: float
    Q: float
    C_sigma: float
    T_rho: float
    gap_direct: float
    gap_analytic: float

    COLUMNS = ("x", "E", "Q", "C_sigma", "T_rho", "gap_direct", "gap_analytic")

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.COLUMNS}


def gap_direct(sigma: BellDiagonalState, w: WitnessSpec, x: float) -> GapReport:
    """Compute each correlation separately and compare with the closed-form gap."""
    point = rho_of_x(sigma, w, x)
    rho = point.rho()
    chi = discord(sigma).ccs
    E = relative_entropy(rho.spectrum, sigma.spectrum)
    Q = relative_entropy(sigma.spectrum, chi.full_spectrum)
    C = classical_correlation(chi)
    T = total_mutual_information(rho)
    direct = E + Q + C - T
    analytic = gap_analytic(sigma, w, x)
    if abs(direct - analytic) > GAP_TOL:
        raise InvariantError(f"gap routes disagree: direct {direct!r}, analytic {analytic!r}")
    return GapReport(x=float(x), E=E, Q=Q, C_sigma=C, T_rho=T, gap_direct=direct, gap_analytic=analytic)


def sweep_points(sigma: BellDiagonalState, w: WitnessSpec, steps: int) -> list[float]:
    """``x_k = x_max * k / steps`` for ``k = 1..steps``."""
    if steps < 1:
        raise InvalidArgumentError(f"steps must be >= 1, got {steps}")
    limit = x_max(sigma, w)
    return [limit * k / steps for k in range(1, steps + 1)]


# ---------------------------------------------------------------------------
# boundary states, vertices and edges


def face_state(n: int, weights, sign_bits: int = 0) -> BlochSphereState:
    """Separable Bloch-sphere state on the boundary face selected by ``sign_bits``.

    ``weights`` is a point of the simplex with ``2n + 1`` entries: the first
    ``2n`` become ``|axis_k|`` and the last ``|t_all|``, with signs fixed so
    that the trace condition of ``witness(n, sign_bits)`` holds.
    """
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (2 * n + 1,) or np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise DomainError("weights must be a probability vector of length 2n + 1")
    signs = np.array([1 - 2 * ((sign_bits >> (2 * n - 1 - k)) & 1) for k in range(2 * n)])
    parity = 1 - 2 * (bin(sign_bits).count("1") & 1)
    axis = -signs * weights[:-1]
    t_all = (-1) ** n * parity * weights[-1]
    return bloch_state(axis, t_all)


def vertex_state(n: int, coordinate: int | str = "all", sign: int = -1) -> BlochSphereState:
    """Extreme point with a single coefficient ``sign`` (``axis`` index or ``"all"``)."""
    if sign not in (-1, 1):
        raise DomainError(f"a vertex has a coefficient of +-1, got {sign!r}")
    axis = np.zeros(2 * n)
    t_all = 0.0
    if coordinate == "all":
        t_all = float(sign)
    elif isinstance(coordinate, (int, np.integer)) and 0 <= coordinate < 2 * n:
        axis[coordinate] = sign
    else:
        raise DomainError(f"unknown vertex coordinate {coordinate!r}")
    return bloch_state(axis, t_all)


def face_witness(sigma: BellDiagonalState) -> WitnessSpec:
    """First witness (by sign bits) whose trace condition ``sigma`` satisfies."""
    for bits in range(4**sigma.n):
        w = witness(sigma.n, bits)
        if abs(trace_condition(sigma, w)) <= TRACE_TOL:
            return w
    raise DomainError("state lies on no witness face")


def vertex_gap(n: int, coordinate: int | str = "all", sign: int = -1, x: float = 1.0) -> float:
    sigma = vertex_state(n, coordinate, sign)
    w = face_witness(sigma)
    gap = gap_analytic(sigma, w, x)
    if abs(gap) > 1e-12:
        raise InvariantError(f"vertex gap is {gap!r}, expected 0")
    return gap


def edge_interval(n: int) -> tuple[float, float]:
    return (-1.0 / (2 * n), 0.0)


def edge_state(n: int, t_axis: float) -> BlochSphereState:
    """Equal axis coefficients on the ``w_0`` face: ``t_all = (-1)^n (1 + 2n t)``."""
    lo, hi = edge_interval(n)
    if not lo - 1e-15 <= t_axis <= hi + 1e-15:
        raise DomainError(f"t_axis={t_axis!r} outside the feasible interval [{lo}, {hi}]")
    return bloch_state(np.full(2 * n, t_axis), (-1) ** n * (1 + 2 * n * t_axis))


def edge_gap(n: int, t_axis: float, x: float = 1.0) -> float:
    """Closed-form gap along the equal-axis edge of the ``w_0`` face.

    Written directly in terms of ``t_axis`` with the per-index factors
    ``S_i = sum_k (-1)^(i_k)`` and ``P_i = (-1)^(sum_k i_k)``.
    """
    lo, hi = edge_interval(n)
    if not lo - 1e-15 <= t_axis <= hi + 1e-15:
        raise DomainError(f"t_axis={t_axis!r} outside the feasible interval [{lo}, {hi}]")
    weight = _popcount(np.arange(4**n))
    S = 2 * n - 2 * weight
    P = 1 - 2 * (weight & 1)
    lam = (1 + S - P) / (2**n * math.sqrt(2 * (n + 1)))
    p = (1 + P + (S + 2 * n * P) * t_axis) / 4**n
    return float(x * (lam @ _plogp(np.clip(p, 0.0, None))))
