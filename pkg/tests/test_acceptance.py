"""Acceptance criteria, one test each, with their tolerances and time budgets.

Every test prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run as a script for the lines alone:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from conftest import ACCEPTANCE_LINES
from helpers import random_bloch, random_boundary, random_state
from qcorr.bell_state import (
    all_ones,
    bloch_state,
    materialize,
    spectrum_from_tensor,
    tensor_from_mapping,
    tensor_from_spectrum,
    validate,
)
from qcorr.cli import EQ28_PAIRS
from qcorr.correlation_measures import best_permutation_alignment, bloch_discord_closed_form, discord
from qcorr.css_family import (
    gap_direct,
    rho_of_x,
    trace_condition,
    vertex_gap,
    witness,
    witness_brackets,
    witness_matrix,
    x_max,
)
from qcorr.oracle import (
    MeasurementGrid,
    birkhoff_certificate,
    brute_force_closest_classical_two_qubit,
    ppt_check,
)
from qcorr.pauli_algebra import (
    AbelianSubgroup,
    build_gamma_set,
    enumerate_abelian_subgroups,
    exponent_commutes,
    group_element,
    verify_clifford,
)

SEED = 20240601


def _criterion(name: str, budget: float, body) -> None:
    start = time.perf_counter()
    try:
        detail, ok = body(), True
    except AssertionError as exc:
        detail, ok = f"assertion failed: {exc}", False
    elapsed = time.perf_counter() - start
    in_time = elapsed <= budget
    status = "PASS" if ok and in_time else "FAIL"
    line = f"{status}  {name}: {detail} [{elapsed:.2f}s of {budget:g}s]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert in_time, line


# ---------------------------------------------------------------------------


def _gamma_algebra():
    worst = 0.0
    for d in (2, 4, 6):
        g = build_gamma_set(d)
        report = verify_clifford(g)
        worst = max(worst, report.anticommutation, report.hermiticity, report.transpose_pattern)
        worst = max(worst, float(np.abs(g.gamma_s @ g.gamma_s - np.eye(g.size)).max()))
    assert worst == 0, worst
    return "d in {2,4,6}: anticommutation, hermiticity, gamma_s^2 = I, transpose pattern all exactly 0"


def test_gamma_algebra():
    _criterion("gamma algebra", 1.0, _gamma_algebra)


def _transform_pair():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    count = 0
    for n in (1, 2, 3):
        size = 334 if n < 3 else 332
        t = rng.uniform(-1, 1, size=(size, 4**n))
        t[:, 0] = 1
        worst = max(worst, float(np.abs(tensor_from_spectrum(spectrum_from_tensor(t)) - t).max()))
        count += size
    assert count == 1000 and worst < 1e-12, worst
    # four-valued spectrum from t_1000, t_0100, t_1100
    t1, t2, t3 = 0.3, -0.2, 0.1
    p = spectrum_from_tensor(tensor_from_mapping(2, {"1000": t1, "0100": t2, "1100": t3}))
    expected = {
        (0, 0): (1 + t1 + t2 + t3) / 16,
        (0, 1): (1 + t1 - t2 - t3) / 16,
        (1, 0): (1 - t1 + t2 - t3) / 16,
        (1, 1): (1 - t1 - t2 + t3) / 16,
    }
    err = max(abs(p[i] - expected[(i >> 3 & 1, i >> 2 & 1)]) for i in range(16))
    assert err <= 1e-16, err
    return f"1000 tensors n<=3 max round-trip error {worst:.1e}; four-valued n=2 spectrum error {err:.1e}"


def test_transform_pair():
    _criterion("transform pair", 1.0, _transform_pair)


def _discord_n1():
    ref = validate(tensor_from_mapping(1, {"10": 0.3, "01": 0.2, "11": 0.1}))
    ref_value = discord(ref).bits
    assert abs(ref_value - 0.030366) <= 1e-6, ref_value
    rng = np.random.default_rng(SEED)
    grid = MeasurementGrid(64)
    worst_oracle = worst_grid = 0.0
    for _ in range(100):
        state = random_state(rng, 1)
        exact = discord(state).bits
        brute, grid_only = brute_force_closest_classical_two_qubit(state, grid, full_output=True)
        assert brute >= exact - 1e-9, (brute, exact)
        worst_oracle = max(worst_oracle, abs(brute - exact))
        worst_grid = max(worst_grid, abs(grid_only - exact))
    assert worst_oracle <= 1e-3, worst_oracle
    worst_closed = 0.0
    for n in (1, 2):
        for _ in range(500):
            s = random_bloch(rng, n)
            worst_closed = max(worst_closed, abs(bloch_discord_closed_form(s) - discord(s).bits))
    assert worst_closed <= 1e-9, worst_closed
    return (
        f"reference {ref_value:.6f} bits; measurement oracle (res 64 + polish, 100 states) max dev "
        f"{worst_oracle:.1e} (grid alone {worst_grid:.1e}); "
        f"closed form (1000 Bloch states, n=1,2) max dev {worst_closed:.1e}"
    )


def test_discord_n1():
    _criterion("discord n=1", 120.0, _discord_n1)


def _commuting_pairs():
    g = build_gamma_set(4)
    groups = {grp.canonical_form for grp in enumerate_abelian_subgroups(2)}
    for a, b in EQ28_PAIRS:
        assert exponent_commutes(a, b), (a, b)
        ma, mb = group_element(g, a), group_element(g, b)
        assert np.array_equal(ma @ mb, mb @ ma), (a, b)
        assert AbelianSubgroup.from_generators(2, [a, b]).canonical_form in groups, (a, b)
    return f"all {len(EQ28_PAIRS)} pairs commute (predicate and matrices); each subgroup enumerated ({len(groups)} total)"


def test_commuting_pairs():
    _criterion("commuting pairs n=2", 5.0, _commuting_pairs)


def _witnesses():
    worst = 0.0
    count = 0
    for n in (1, 2):
        c2 = Fraction(1, 4**n * 2 * (n + 1))
        for bits in range(4**n):
            brackets = witness_brackets(n, bits)
            assert c2 * sum(Fraction(int(b)) ** 2 for b in brackets) == 1, (n, bits)
            w = witness(n, bits)
            eig = np.linalg.eigvalsh(witness_matrix(w))
            worst = max(worst, float(np.abs(np.sort(eig) - np.sort(w.eigenvalues)).max()))
            count += 1
    assert worst <= 1e-10, worst
    return f"{count} witnesses: normalization exact in rationals, dense spectrum max dev {worst:.1e}"


def test_witnesses():
    _criterion("witnesses", 5.0, _witnesses)


def _inverse_family():
    rng = np.random.default_rng(SEED)
    mismatches = on_face = 0
    worst_trace = worst_neg = worst_zero = 0.0
    for k in range(1000):
        n = 1 + k % 2
        bits = int(rng.integers(4**n))
        w = witness(n, bits)
        sigma = random_boundary(rng, n, bits) if k % 4 < 2 else random_bloch(rng, n, separable=True)
        face = abs(sigma.spectrum[bits ^ all_ones(n)] - 2 / 4**n) <= 1e-12
        satisfied = abs(trace_condition(sigma, w)) < 1e-12
        mismatches += face != satisfied
        if not satisfied:
            continue
        on_face += 1
        limit = x_max(sigma, w)
        p = rho_of_x(sigma, w, limit * rng.uniform(1e-6, 1)).rho_spectrum
        worst_trace = max(worst_trace, abs(p.sum() - 1))
        worst_neg = max(worst_neg, -p.min())
        worst_zero = max(worst_zero, rho_of_x(sigma, w, limit).rho_spectrum.min())
    assert mismatches == 0, mismatches
    assert worst_trace <= 1e-12 and worst_neg <= 0 and worst_zero <= 1e-12, (worst_trace, worst_neg, worst_zero)
    return (
        f"1000 states ({on_face} on a face): trace condition <=> face, 0 mismatches; "
        f"|Tr rho - 1| <= {worst_trace:.1e}; min eigenvalue at x_max <= {worst_zero:.1e}"
    )


def test_inverse_family():
    _criterion("inverse family", 10.0, _inverse_family)


def _subadditivity():
    sigma = bloch_state([-0.25, -0.25], -0.5)
    w = witness(1, 0)
    for x in (0.5, 1.0, 2.0):
        r = gap_direct(sigma, w, x)
        assert abs(r.gap_direct + 0.375 * x) <= 1e-9, (x, r.gap_direct)
    vertex_worst = 0.0
    for n in (1, 2, 3):
        for coord in ["all", *range(2 * n)]:
            for sign in (-1, 1):
                vertex_worst = max(vertex_worst, abs(vertex_gap(n, coord, sign)))
    assert vertex_worst <= 1e-12, vertex_worst
    rng = np.random.default_rng(SEED)
    worst_routes = max_gap = -np.inf
    for k in range(1000):
        n = 1 + k % 2
        bits = int(rng.integers(4**n))
        sigma, w = random_boundary(rng, n, bits), witness(n, bits)
        r = gap_direct(sigma, w, x_max(sigma, w) * rng.uniform(1e-6, 1))
        worst_routes = max(worst_routes, abs(r.gap_direct - r.gap_analytic))
        max_gap = max(max_gap, r.gap_direct)
    assert worst_routes <= 1e-9, worst_routes
    assert max_gap <= 1e-12, max_gap
    return (
        f"worked gap = -0.375 x; vertex gaps <= {vertex_worst:.0e}; 1000 random draws: "
        f"direct vs analytic <= {worst_routes:.1e}, max gap {max_gap:.3g}"
    )


def test_subadditivity():
    _criterion("subadditivity", 60.0, _subadditivity)


def _theorem_certificate():
    rng = np.random.default_rng(SEED)
    lines = []
    for size in range(2, 9):
        lam, mu = rng.dirichlet(np.ones(size)), rng.dirichlet(np.ones(size))
        cert = birkhoff_certificate(lam, mu, samples=10_000, seed=SEED + size)
        _, optimum = best_permutation_alignment(lam, mu)
        assert cert.violations == 0 and cert.max_sampled <= optimum + 1e-12
        lines.append(size)
    return f"10^4 Sinkhorn samples per length {lines[0]}..{lines[-1]}: 0 exceed the permutation optimum"


def test_theorem_certificate():
    _criterion("theorem certificate", 30.0, _theorem_certificate)


def _entanglement():
    sigma = bloch_state([-0.25, -0.25], -0.5)
    w = witness(1, 0)
    worst = -np.inf
    for x in np.linspace(0.02, 2.0, 100):
        worst = max(worst, ppt_check(materialize(rho_of_x(sigma, w, x).rho())))
    assert worst < 0, worst
    end = materialize(rho_of_x(sigma, w, 2.0).rho())
    singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
    assert np.allclose(end, np.outer(singlet, singlet), atol=1e-12)
    pt_min = ppt_check(end)
    assert abs(pt_min + 0.5) <= 1e-12, pt_min
    return f"100 x in (0,2] all NPT (largest PT minimum {worst:.3g}); rho(2) = singlet, PT minimum {pt_min:.3g}"


def test_entanglement():
    _criterion("entanglement sanity", 5.0, _entanglement)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
