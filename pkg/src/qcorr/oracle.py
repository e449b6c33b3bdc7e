"""Brute-force checks for the analytic formulas, at desk scale.

Nothing here is used by the analytic routines; these are the independent
sides of the cross-checks run by the tests and ``qcorr selftest``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .bell_state import BellDiagonalState, materialize
from .correlation_measures import best_permutation_alignment
from .errors import InvalidArgumentError, InvariantError, SamplingError
from .pauli_algebra import SIGMA

log = logging.getLogger(__name__)

_PAULIS = [SIGMA["X"], SIGMA["Y"], SIGMA["Z"]]


def partial_trace(rho: np.ndarray, keep: int, dims: tuple[int, int]) -> np.ndarray:
    """Reduced state of party ``keep`` (0 or 1) of a bipartite matrix."""
    da, db = dims
    r = rho.reshape(da, db, da, db)
    if keep == 0:
        return np.einsum("ajbj->ab", r)
    return np.einsum("iaib->ab", r)


def partial_transpose(rho: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    """Transpose the second tensor factor."""
    da, db = dims
    return rho.reshape(da, db, da, db).transpose(0, 3, 2, 1).reshape(da * db, da * db)


def von_neumann_entropy(rho: np.ndarray) -> float:
    vals = np.linalg.eigvalsh(rho)
    vals = vals[vals > 1e-15]
    return float(-(vals * np.log2(vals)).sum())


def ppt_check(matrix: np.ndarray) -> float:
    """Minimum eigenvalue of the partial transpose; negative means entangled."""
    matrix = np.asarray(matrix)
    size = matrix.shape[0]
    N = int(round(np.sqrt(size)))
    if matrix.shape != (size, size) or N * N != size or N not in (2, 4):
        raise InvalidArgumentError(f"expected an N^2 x N^2 matrix with N in (2, 4), got {matrix.shape}")
    if not np.allclose(matrix, matrix.conj().T, atol=1e-10):
        raise InvalidArgumentError("matrix is not hermitian")
    return float(np.linalg.eigvalsh(partial_transpose(matrix, (N, N))).min())


# ---------------------------------------------------------------------------
# measurement search at n = 1


@dataclass(frozen=True)
class MeasurementGrid:
    """Local measurement directions ``(theta, phi)`` per qubit.

    ``theta`` spans ``[0, pi]`` and ``phi`` spans ``[0, pi)``: every
    orthonormal qubit basis ``{u, -u}`` appears once up to the grid spacing.
    """

    resolution: int = 64

    def __post_init__(self):
        if self.resolution < 16:
            raise InvalidArgumentError(f"resolution must be >= 16, got {self.resolution}")

    def directions(self) -> np.ndarray:
        theta = np.linspace(0.0, np.pi, self.resolution)
        phi = np.linspace(0.0, np.pi, self.resolution, endpoint=False)
        th, ph = np.meshgrid(theta, phi, indexing="ij")
        return _unit(th.ravel(), ph.ravel())


def _unit(theta, phi) -> np.ndarray:
    return np.stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1
    )


def _pauli_coordinates(rho: np.ndarray):
    a = np.array([np.trace(rho @ np.kron(s, np.eye(2))).real for s in _PAULIS])
    b = np.array([np.trace(rho @ np.kron(np.eye(2), s)).real for s in _PAULIS])
    T = np.array([[np.trace(rho @ np.kron(s, r)).real for r in _PAULIS] for s in _PAULIS])
    return a, b, T


def _outcome_entropy(ua, vb, uTv) -> np.ndarray:
    """Entropy of the four joint outcomes of measuring ``u`` on A and ``v`` on B."""
    dtype = np.result_type(ua, vb, uTv)
    tiny = np.finfo(dtype).tiny
    total = np.zeros(np.broadcast(ua, vb, uTv).shape, dtype=dtype)
    for sa in (1, -1):
        for sb in (1, -1):
            p = np.maximum(0.25 * (1 + sa * ua + sb * vb + sa * sb * uTv), tiny)
            total -= p * np.log2(p)
    return total


def brute_force_closest_classical_two_qubit(
    state: BellDiagonalState | np.ndarray,
    grid: MeasurementGrid = MeasurementGrid(),
    refine: bool = True,
    full_output: bool = False,
) -> float | tuple[float, float]:
    """``min S(rho || chi)`` over classical two-qubit states, searched directly.

    For a fixed local product basis the best weights are the diagonal of
    ``rho`` in that basis, giving ``S(diag) - S(rho)``; the basis is searched
    on ``grid`` and optionally polished with Nelder-Mead.  The result is an
    upper bound on the discord.  With ``full_output`` the pure grid value is
    returned as well, as ``(value, grid_value)``.
    """
    rho = materialize(state) if isinstance(state, BellDiagonalState) else np.asarray(state)
    if rho.shape != (4, 4):
        raise InvalidArgumentError("the measurement oracle is two-qubit only")
    s_rho = von_neumann_entropy(rho)
    a, b, T = _pauli_coordinates(rho)
    dirs = grid.directions()
    # coarse search in single precision; the winner is re-evaluated in double
    d32 = dirs.astype(np.float32)
    ua_all = d32 @ a.astype(np.float32)
    vb_all = d32 @ b.astype(np.float32)
    UT = d32 @ T.astype(np.float32)
    best32, best_idx = np.inf, (0, 0)
    # fixed-size chunks bound memory at chunk * len(dirs) entries
    chunk = 256
    for start in range(0, len(dirs), chunk):
        uTv = UT[start:start + chunk] @ d32.T
        h = _outcome_entropy(ua_all[start:start + chunk, None], vb_all[None, :], uTv)
        k = int(np.argmin(h))
        if h.flat[k] < best32:
            best32 = h.flat[k]
            best_idx = (start + k // len(dirs), k % len(dirs))
    u, v = dirs[best_idx[0]], dirs[best_idx[1]]
    best = grid_best = float(_outcome_entropy(u @ a, v @ b, u @ T @ v))
    if refine:
        th = np.linspace(0.0, np.pi, grid.resolution)
        ph = np.linspace(0.0, np.pi, grid.resolution, endpoint=False)
        ia, ib = best_idx
        x0 = [th[ia // grid.resolution], ph[ia % grid.resolution], th[ib // grid.resolution], ph[ib % grid.resolution]]

        def objective(angles):
            u = _unit(angles[0], angles[1])
            v = _unit(angles[2], angles[3])
            return float(_outcome_entropy(u @ a, v @ b, u @ T @ v))

        res = minimize(objective, x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-14})
        best = min(best, float(res.fun))
    if full_output:
        return best - s_rho, grid_best - s_rho
    return best - s_rho


def brute_force_closest_product_two_qubit(chi: np.ndarray, resolution: int = 64) -> float:
    """``min S(chi || pi_A (x) pi_B)`` over product states on a Bloch-ball grid.

    ``log(pi_A (x) pi_B)`` splits into local terms, so each party's Bloch
    vector is searched on its own ``resolution**3`` cube grid.
    """
    chi = np.asarray(chi)
    if chi.shape != (4, 4):
        raise InvalidArgumentError("the product-state oracle is two-qubit only")
    axis = np.linspace(-1, 1, resolution)
    r = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    norm = np.linalg.norm(r, axis=1)
    r, norm = r[norm < 1], norm[norm < 1]
    rhat = np.divide(r, norm[:, None], out=np.zeros_like(r), where=norm[:, None] > 0)

    def best_local(reduced: np.ndarray) -> float:
        bloch = np.array([np.trace(reduced @ s).real for s in _PAULIS])
        along = rhat @ bloch
        # Tr(reduced log2 pi) with pi = (I + r.sigma)/2
        val = 0.5 * (1 + along) * np.log2((1 + norm) / 2) + 0.5 * (1 - along) * np.log2((1 - norm) / 2)
        return float(val.max())

    rho_a = partial_trace(chi, 0, (2, 2))
    rho_b = partial_trace(chi, 1, (2, 2))
    return -von_neumann_entropy(chi) - best_local(rho_a) - best_local(rho_b)


# ---------------------------------------------------------------------------
# Birkhoff polytope


def sinkhorn(mats: np.ndarray, tol: float = 1e-10, max_iter: int = 1000) -> np.ndarray:
    """Scale positive matrices (batched on axis 0) to doubly stochastic form."""
    q = np.array(mats, dtype=float)
    if np.any(q <= 0):
        raise InvalidArgumentError("Sinkhorn needs strictly positive matrices")
    for _ in range(max_iter):
        q /= q.sum(axis=-1, keepdims=True)
        q /= q.sum(axis=-2, keepdims=True)
        err = np.abs(q.sum(axis=-1) - 1).max()
        if err <= tol:
            return q
    raise SamplingError(f"Sinkhorn did not converge in {max_iter} iterations (row error {err:.2e})")


@dataclass(frozen=True)
class BirkhoffCertificate:
    samples: int
    seed: int
    optimum: float
    max_sampled: float
    violations: int

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "optimum": self.optimum,
            "max_sampled": self.max_sampled,
            "violations": self.violations,
        }


def birkhoff_certificate(lam, mu, samples: int = 10_000, seed: int = 0) -> BirkhoffCertificate:
    """Sample doubly stochastic ``Q`` and check ``lam^T Q log2(mu)`` never beats the best permutation."""
    lam = np.asarray(lam, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if np.any(mu <= 0):
        raise InvalidArgumentError("mu must be strictly positive")
    log.info("birkhoff_certificate seed=%d samples=%d size=%d", seed, samples, lam.size)
    _, optimum = best_permutation_alignment(lam, mu)
    rng = np.random.default_rng(seed)
    eta = np.log2(mu)
    # a spread of concentrations reaches both the centre and the corners
    spread = rng.uniform(0.1, 1.5, size=(samples, 1, 1))
    raw = np.exp(spread * rng.standard_normal((samples, lam.size, lam.size)))
    q = sinkhorn(raw)
    values = np.einsum("i,sij,j->s", lam, q, eta)
    slack = 1e-12 * max(1.0, abs(optimum))
    violations = int((values > optimum + slack).sum())
    cert = BirkhoffCertificate(
        samples=samples, seed=seed, optimum=optimum, max_sampled=float(values.max()), violations=violations
    )
    if not cert.ok:
        raise InvariantError(f"{violations} doubly stochastic samples beat the permutation optimum")
    return cert
