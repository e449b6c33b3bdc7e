from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_bloch, random_boundary
from qcorr.bell_state import all_ones, bloch_state, materialize, state_from_spectrum
from qcorr.css_family import (
    WitnessSpec,
    edge_gap,
    edge_state,
    face_state,
    face_witness,
    gap_analytic,
    gap_direct,
    l_apply_dense,
    l_inverse_apply,
    l_inverse_apply_dense,
    rho_of_x,
    sweep_points,
    trace_condition,
    vertex_gap,
    vertex_state,
    witness,
    witness_brackets,
    witness_matrix,
    witness_scale,
    x_max,
)
from qcorr.errors import (
    DomainError,
    InvalidArgumentError,
    PreconditionError,
    ResourceLimitError,
    SingularMapError,
    UnboundedFamilyError,
)

# frozen oracle values for the worked n=1 example at x=1
WORKED_E = 0.18872187554086717
WORKED_Q = 0.061278124459132834
WORKED_C = 0.18872187554086717
WORKED_T = 0.8137218755408672


@pytest.fixture
def worked():
    return bloch_state([-0.25, -0.25], -0.5), witness(1, "00")


class TestWitness:
    def test_n1_eigenvalues(self):
        assert np.allclose(witness(1, 0).eigenvalues, [0.5, 0.5, 0.5, -0.5], atol=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_normalization_exact(self, n):
        # c^2 = 1 / (N^2 * 2(n+1)) is rational, so the check is exact
        c2 = Fraction(1, 4**n * 2 * (n + 1))
        for bits in range(4**n):
            brackets = witness_brackets(n, bits)
            assert c2 * sum(Fraction(int(b)) ** 2 for b in brackets) == 1

    @pytest.mark.parametrize("n", [1, 2])
    def test_dense_spectrum(self, n):
        for bits in range(4**n):
            w = witness(n, bits)
            m = witness_matrix(w)
            assert np.allclose(m, m.conj().T, atol=1e-15)
            eig = np.linalg.eigvalsh(m)
            assert np.abs(np.sort(eig) - np.sort(w.eigenvalues)).max() < 1e-10

    @pytest.mark.parametrize("n", [1, 2])
    def test_dense_diagonal_in_projector_basis(self, n):
        from qcorr.bell_state import projectors

        pis = projectors(n)
        for bits in (0, 4**n - 1, 1):
            w = witness(n, bits)
            m = witness_matrix(w)
            for pi, lam in zip(pis, w.eigenvalues):
                assert np.allclose(m @ pi, lam * pi, atol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_global_flip(self, n):
        full = 4**n - 1
        for bits in range(4**n):
            a = witness(n, bits).eigenvalues
            b = witness(n, bits ^ full).eigenvalues
            assert np.allclose(b, a[np.arange(4**n) ^ full])

    def test_bad_inputs(self):
        with pytest.raises(InvalidArgumentError):
            witness(1, "001")
        with pytest.raises(InvalidArgumentError):
            witness(1, 7)
        with pytest.raises(ResourceLimitError):
            witness(5)
        with pytest.raises(ResourceLimitError):
            witness_matrix(witness(3))


class TestTraceCondition:
    def test_worked(self, worked):
        sigma, w = worked
        assert trace_condition(sigma, w) == 0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_interior_gives_scale(self, n):
        sigma = state_from_spectrum(np.full(4**n, 4.0**-n))
        assert trace_condition(sigma, witness(n)) == pytest.approx(witness_scale(n), abs=1e-15)

    @pytest.mark.parametrize("n", [1, 2])
    def test_equivalent_to_face(self, rng, n):
        N2 = 4**n
        hits = 0
        for k in range(500):
            bits = int(rng.integers(4**n))
            w = witness(n, bits)
            sigma = random_boundary(rng, n, bits) if k % 2 else random_bloch(rng, n, separable=True)
            on_face = abs(sigma.spectrum[bits ^ all_ones(n)] - 2 / N2) <= 1e-12
            satisfied = abs(trace_condition(sigma, w)) <= 1e-12
            assert on_face == satisfied
            hits += satisfied
        assert 200 <= hits <= 300


class TestInverseMap:
    def test_worked(self, worked):
        sigma, w = worked
        out = l_inverse_apply(sigma, w)
        assert np.allclose(out, [0.125, 0.0625, 0.0625, -0.25], atol=1e-15)
        assert out.sum() == pytest.approx(trace_condition(sigma, w), abs=1e-15)

    def test_maximally_mixed(self):
        sigma = state_from_spectrum(np.full(4, 0.25))
        w = witness(1)
        assert np.allclose(l_inverse_apply(sigma, w), w.eigenvalues / 4)

    @pytest.mark.parametrize("n", [1, 2])
    def test_dense_route_agrees(self, rng, n):
        for _ in range(5):
            bits = int(rng.integers(4**n))
            sigma, w = random_boundary(rng, n, bits), witness(n, bits)
            dense = l_inverse_apply_dense(sigma, w)
            from qcorr.bell_state import projectors

            diag = np.array([np.trace(pi @ dense).real for pi in projectors(n)])
            assert np.allclose(diag, l_inverse_apply(sigma, w), atol=1e-12)
            back = l_apply_dense(sigma, dense)
            assert np.allclose(back, witness_matrix(w), atol=1e-12)

    def test_singular(self):
        sigma = vertex_state(1, 0)
        with pytest.raises(SingularMapError):
            l_inverse_apply(sigma, face_witness(sigma))


class TestFamily:
    def test_worked_points(self, worked):
        sigma, w = worked
        assert x_max(sigma, w) == pytest.approx(2)
        assert np.allclose(rho_of_x(sigma, w, 1).rho_spectrum, [0.125, 0.0625, 0.0625, 0.75])
        assert np.allclose(rho_of_x(sigma, w, 1e-12).rho_spectrum, sigma.spectrum, atol=1e-12)
        assert np.allclose(rho_of_x(sigma, w, 2).rho_spectrum, [0, 0, 0, 1], atol=1e-15)

    def test_domain_and_precondition(self, worked):
        sigma, w = worked
        for x in (0, -0.5, 2.1):
            with pytest.raises(DomainError):
                rho_of_x(sigma, w, x)
        with pytest.raises(PreconditionError):
            x_max(state_from_spectrum(np.full(4, 0.25)), w)

    def test_x_max_homogeneous(self, worked):
        sigma, w = worked
        half = WitnessSpec(w.n, w.sign_bits, w.eigenvalues / 2, w.scale / 2)
        assert x_max(sigma, half) == pytest.approx(2 * x_max(sigma, w))

    def test_unbounded(self, worked):
        sigma, w = worked
        # a degenerate spec with no positive eigenvalue passes the trace test trivially
        with pytest.raises(UnboundedFamilyError):
            x_max(sigma, WitnessSpec(w.n, w.sign_bits, np.zeros(4), 0.0))

    @pytest.mark.parametrize("n", [1, 2])
    def test_random_family_points(self, rng, n):
        for _ in range(500):
            bits = int(rng.integers(4**n))
            sigma, w = random_boundary(rng, n, bits), witness(n, bits)
            limit = x_max(sigma, w)
            x = limit * rng.uniform(1e-6, 1)
            p = rho_of_x(sigma, w, x).rho_spectrum
            assert p.min() >= 0
            assert p.sum() == pytest.approx(1, abs=1e-12)
            assert rho_of_x(sigma, w, limit).rho_spectrum.min() <= 1e-12

    def test_sweep_points(self, worked):
        sigma, w = worked
        assert sweep_points(sigma, w, 4) == [0.5, 1.0, 1.5, 2.0]
        with pytest.raises(InvalidArgumentError):
            sweep_points(sigma, w, 0)


class TestGap:
    def test_worked(self, worked):
        sigma, w = worked
        r = gap_direct(sigma, w, 1.0)
        assert r.gap_direct == pytest.approx(-0.375, abs=1e-12)
        assert r.gap_analytic == pytest.approx(-0.375, abs=1e-15)
        assert (r.E, r.Q, r.C_sigma, r.T_rho) == pytest.approx((WORKED_E, WORKED_Q, WORKED_C, WORKED_T), abs=1e-14)
        for x in (0.5, 1.5, 2.0):
            assert gap_analytic(sigma, w, x) == pytest.approx(-0.375 * x)
        assert gap_analytic(sigma, w, 0) == 0

    def test_small_x(self, worked):
        sigma, w = worked
        r = gap_direct(sigma, w, 1e-9)
        assert r.E == pytest.approx(0, abs=1e-12)
        assert r.gap_direct == pytest.approx(0, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 2])
    def test_direct_matches_analytic_and_subadditive(self, rng, n):
        for _ in range(200):
            bits = int(rng.integers(4**n))
            sigma, w = random_boundary(rng, n, bits), witness(n, bits)
            x = x_max(sigma, w) * rng.uniform(1e-6, 1)
            r = gap_direct(sigma, w, x)
            assert abs(r.gap_direct - r.gap_analytic) <= 1e-9
            assert r.gap_direct <= 1e-12

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_vertices(self, n):
        for coordinate in ["all", *range(2 * n)]:
            for sign in (-1, 1):
                assert vertex_gap(n, coordinate, sign) == pytest.approx(0, abs=1e-12)
                assert vertex_gap(n, coordinate, sign, x=0.37) == pytest.approx(0, abs=1e-12)

    def test_vertex_direct(self):
        sigma = vertex_state(1, "all", -1)
        w = face_witness(sigma)
        r = gap_direct(sigma, w, 0.5 * x_max(sigma, w))
        assert r.gap_direct == pytest.approx(0, abs=1e-12)

    def test_vertex_domain(self):
        with pytest.raises(DomainError):
            vertex_state(1, 5)
        with pytest.raises(DomainError):
            vertex_state(1, "all", 0)


class TestEdge:
    def test_zero_at_origin(self):
        for n in (1, 2, 3):
            assert edge_gap(n, 0.0) == pytest.approx(0, abs=1e-15)

    @pytest.mark.parametrize("n", [1, 2])
    def test_convex_and_nonpositive(self, n):
        lo, hi = -1 / (2 * n), 0.0
        ts = np.linspace(lo, hi, 100)
        values = np.array([edge_gap(n, t) for t in ts])
        assert np.all(np.diff(values, 2) >= -1e-10)
        assert np.all(values <= 1e-12)

    def test_matches_direct(self):
        assert edge_gap(1, -0.25) == pytest.approx(-0.375, abs=1e-12)
        for n in (1, 2):
            w = witness(n, 0)
            for t in np.linspace(-1 / (2 * n), 0, 12)[1:-1]:
                sigma = edge_state(n, t)
                assert trace_condition(sigma, w) == pytest.approx(0, abs=1e-12)
                for x in (0.3, 1.0):
                    if x > x_max(sigma, w):
                        continue
                    assert edge_gap(n, t, x) == pytest.approx(gap_direct(sigma, w, x).gap_direct, abs=1e-9)

    def test_infeasible(self):
        with pytest.raises(DomainError):
            edge_gap(1, 0.1)
        with pytest.raises(DomainError):
            edge_state(2, -0.3)


class TestEntanglement:
    def test_worked_family_is_npt(self, worked):
        from qcorr.oracle import ppt_check

        sigma, w = worked
        for x in np.linspace(0.05, 2, 40):
            rho = materialize(rho_of_x(sigma, w, x).rho())
            assert ppt_check(rho) < 0

    def test_endpoint_is_singlet(self, worked):
        from qcorr.oracle import ppt_check

        sigma, w = worked
        rho = materialize(rho_of_x(sigma, w, 2.0).rho())
        singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
        assert np.allclose(rho, np.outer(singlet, singlet), atol=1e-12)
        assert ppt_check(rho) == pytest.approx(-0.5, abs=1e-12)

    def test_face_state_validation(self):
        with pytest.raises(DomainError):
            face_state(1, [0.5, 0.5])

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.floats(0.01, 1), min_size=3, max_size=3), st.integers(0, 3))
    def test_face_states_satisfy_trace(self, weights, bits):
        weights = np.array(weights) / sum(weights)
        sigma = face_state(1, weights, bits)
        assert abs(trace_condition(sigma, witness(1, bits))) <= 1e-12
        assert sigma.is_separable
