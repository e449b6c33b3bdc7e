"""Command line entry point: ``qcorr report | css-sweep | selftest``.

Exit codes: 0 success, 2 invalid input, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import bell_state, css_family, oracle, pauli_algebra
from .correlation_measures import correlation_report
from .errors import InvariantError, QcorrError

log = logging.getLogger("qcorr")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INTERNAL = 3

# generator pairs listed for n = 2, with 1001/1011 read as 1001
EQ28_PAIRS = [
    ("1000", "0101"), ("0001", "0110"), ("1000", "0110"),
    ("0100", "0011"), ("1111", "1100"), ("1111", "1010"),
    ("1000", "0011"), ("0010", "0101"), ("1111", "1001"),
    ("0010", "1001"), ("0100", "1010"), ("0001", "1100"),
    ("0010", "1100"), ("0100", "1001"), ("0001", "1010"),
]


class InputError(Exception):
    """Bad command-line input; reported with exit code 2."""


@dataclass(frozen=True)
class StateFile:
    n: int
    coefficients: dict[str, float]

    @classmethod
    def from_mapping(cls, data) -> "StateFile":
        if not isinstance(data, dict):
            raise InputError("state file must hold a JSON object")
        n = data.get("n")
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InputError(f"state file needs a positive integer 'n', got {n!r}")
        coeffs = {}
        for key, value in data.items():
            if key == "n":
                continue
            if len(key) != 2 * n or set(key) - {"0", "1"}:
                raise InputError(f"unknown key {key!r}: expected a {2 * n}-bit exponent label")
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InputError(f"coefficient for {key!r} must be a number")
            coeffs[key] = float(value)
        return cls(n=n, coefficients=coeffs)

    @classmethod
    def load(cls, path: str) -> "StateFile":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} is not valid JSON: {exc}") from exc
        return cls.from_mapping(data)

    def tensor(self) -> np.ndarray:
        return bell_state.tensor_from_mapping(self.n, self.coefficients)

    def state(self) -> bell_state.BellDiagonalState:
        return bell_state.validate(self.tensor())


def _num(value: float) -> float:
    out = float(f"{value:.12g}")
    return 0.0 if out == 0 else out


def _fmt(value: float) -> str:
    return f"{_num(value):.12g}"


def _threads() -> int:
    raw = os.environ.get("QCORR_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            log.warning("ignoring non-integer QCORR_THREADS=%r", raw)
    return os.cpu_count() or 1


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([{k: _num(v) for k, v in r.items()} for r in rows], out, indent=2)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(rows[0]))
    for r in rows:
        writer.writerow([_fmt(v) for v in r.values()])


# ---------------------------------------------------------------------------
# commands


def cmd_report(args, out) -> int:
    state = StateFile.load(args.state).state()
    report = correlation_report(state)
    if abs(report.L_rho_check) > 1e-12:
        raise InvariantError(f"L_rho = {report.L_rho_check!r}, expected 0")
    data = report.to_dict()
    if args.format == "csv":
        subgroup = " ".join(data.pop("ccs_subgroup"))
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(list(data) + ["ccs_subgroup"])
        writer.writerow([_fmt(v) for v in data.values()] + [subgroup])
    else:
        payload = {k: (v if k == "ccs_subgroup" else _num(v)) for k, v in data.items()}
        json.dump(payload, out, indent=2)
        out.write("\n")
    return EXIT_OK


def cmd_css_sweep(args, out) -> int:
    sigma = StateFile.load(args.state).state()
    bits = args.witness if args.witness is not None else "0" * (2 * sigma.n)
    w = css_family.witness(sigma.n, bits)
    residual = css_family.trace_condition(sigma, w)
    if abs(residual) > css_family.TRACE_TOL:
        raise InputError(
            f"sigma is not on the boundary face of witness {bits}: trace condition residual {residual:.12g}"
        )
    xs = css_family.sweep_points(sigma, w, args.steps)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        reports = list(pool.map(lambda x: css_family.gap_direct(sigma, w, x), xs))
    _emit_rows([r.to_dict() for r in reports], args.format or "csv", out)
    return EXIT_OK


def _suite_gamma(n: int, fault: bool) -> str:
    for d in range(2, 2 * n + 1, 2):
        g = pauli_algebra.build_gamma_set(d)
        if fault:
            mats = list(g.matrices)
            mats[0] = mats[0].copy()
            k = np.flatnonzero(mats[0])[0]
            mats[0].flat[k] *= -1
            g = replace(g, matrices=tuple(mats))
        report = pauli_algebra.verify_clifford(g)
        if not report.ok:
            raise InvariantError(f"d={d}: {report}")
    return f"d=2..{2 * n} exact"


def _suite_commutation(n: int) -> str:
    checked = 0
    for m in range(1, n + 1):
        g = pauli_algebra.build_gamma_set(2 * m)
        mats = [pauli_algebra.group_element(g, a) for a in range(4**m)]
        for a in range(4**m):
            for b in range(4**m):
                commutes = np.array_equal(mats[a] @ mats[b], mats[b] @ mats[a])
                if commutes != (pauli_algebra.exponent_form(a, b) == 0):
                    raise InvariantError(f"commutation mismatch for {a}, {b} at n={m}")
                checked += 1
    return f"{checked} pairs"


def _suite_transform(n: int, seed: int) -> str:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for m in range(1, n + 1):
        for _ in range(100):
            p = rng.dirichlet(np.ones(4**m))
            t = bell_state.tensor_from_spectrum(p)
            worst = max(worst, np.abs(bell_state.spectrum_from_tensor(t) - p).max())
        if m <= 2:
            state = bell_state.validate(bell_state.tensor_from_spectrum(rng.dirichlet(np.ones(4**m))))
            eig = np.linalg.eigvalsh(bell_state.materialize(state))
            worst = max(worst, np.abs(np.sort(eig) - np.sort(state.spectrum)).max())
    if worst > 1e-10:
        raise InvariantError(f"transform round trip error {worst:.2e}")
    return f"max error {worst:.1e}"


def _suite_witness(n: int) -> str:
    for m in range(1, n + 1):
        for bits in range(4**m):
            w = css_family.witness(m, bits)
            if m <= 2:
                eig = np.linalg.eigvalsh(css_family.witness_matrix(w))
                if np.abs(np.sort(eig) - np.sort(w.eigenvalues)).max() > 1e-10:
                    raise InvariantError(f"witness {w.label} spectrum mismatch")
    return f"n=1..{n}, all sign bits"


def _suite_birkhoff(seed: int) -> str:
    rng = np.random.default_rng(seed)
    for size in (2, 4, 8):
        lam = rng.dirichlet(np.ones(size))
        mu = rng.dirichlet(np.ones(size))
        oracle.birkhoff_certificate(lam, mu, samples=2000, seed=seed + size)
    return "sizes 2, 4, 8"


def _suite_eq28() -> str:
    groups = {g.canonical_form for g in pauli_algebra.enumerate_abelian_subgroups(2)}
    for a, b in EQ28_PAIRS:
        if not pauli_algebra.exponent_commutes(a, b):
            raise InvariantError(f"pair ({a}, {b}) does not commute")
        canon = pauli_algebra.AbelianSubgroup.from_generators(2, [a, b]).canonical_form
        if canon not in groups:
            raise InvariantError(f"pair ({a}, {b}) missing from the enumeration")
    return f"{len(EQ28_PAIRS)} pairs, {len(groups)} subgroups"


def cmd_selftest(args, out) -> int:
    n = args.n
    if not 1 <= n <= 2:
        raise InputError("selftest --n must be 1 or 2")
    log.info("selftest seed=%d", args.seed)
    suites = [
        ("gamma", lambda: _suite_gamma(n, args.inject_fault)),
        ("commutation", lambda: _suite_commutation(n)),
        ("transform", lambda: _suite_transform(n, args.seed)),
        ("witness", lambda: _suite_witness(n)),
        ("birkhoff", lambda: _suite_birkhoff(args.seed)),
    ]
    if n >= 2:
        suites.append(("pair-list", _suite_eq28))
    failed = 0
    for name, run in suites:
        try:
            detail = run()
            out.write(f"PASS {name}: {detail}\n")
        except (QcorrError, AssertionError) as exc:
            failed += 1
            out.write(f"FAIL {name}: {exc}\n")
    out.write(f"{len(suites) - failed}/{len(suites)} suites passed\n")
    return EXIT_INTERNAL if failed else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcorr", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="correlation measures of one Bell-diagonal state")
    p.add_argument("--state", required=True, metavar="FILE")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("css-sweep", help="sweep the entangled family rho(x) of a boundary state")
    p.add_argument("--state", required=True, metavar="FILE")
    p.add_argument("--witness", metavar="BITS")
    p.add_argument("--steps", type=int, default=10, metavar="K")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_css_sweep)

    p = sub.add_parser("selftest", help="run the algebra and oracle self-checks")
    p.add_argument("--n", type=int, default=2, metavar="K")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    out = out or sys.stdout
    buffer = io.StringIO()
    try:
        code = args.func(args, buffer)
    except InvariantError as exc:
        print(f"qcorr: internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, QcorrError, ValueError) as exc:
        print(f"qcorr: invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out.write(buffer.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
