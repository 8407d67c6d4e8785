"""Command-line front end.

Payload goes to stdout (or ``--out``), diagnostics to stderr.  Exit codes:
0 success, 1 verification or comparison failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .fock import enumerate_basis, hermitian_eigenvalues, operator_matrix, spectra_match
from .hamiltonian import (
    HamiltonianParams,
    build_flow,
    build_flow_hopping,
    build_flow_interaction,
    build_site,
    fundamental_sum,
    hamiltonian_to_json,
    parse_rational,
    perturb_coefficient,
    verify_flow_representation,
    verify_fundamental_formula,
    verify_golden,
)

SPECTRAL_TOL = 1e-9
THREADS_ENV = "BOSONFLOW_THREADS"


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ring_size(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError(f"ring size must be >= 2, got {n}")
    return n


def _particles(text: str) -> int:
    try:
        N = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if N < 0:
        raise argparse.ArgumentTypeError(f"particle number must be >= 0, got {N}")
    return N


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bosonflow",
        description="Exact site/flow representations of the Bose-Hubbard ring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, params=False, particles=False):
        p.add_argument("--n", type=_ring_size, required=True, help="ring size (>= 2)")
        if particles:
            p.add_argument("--particles", "-N", type=_particles, required=True, help="total particle number")
        if params:
            p.add_argument("--J", type=_rational, default=parse_rational(1), help="tunnelling, 'p/q' or integer")
            p.add_argument("--U", type=_rational, default=parse_rational(1), help="interaction, 'p/q' or integer")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the payload to this file instead of stdout")

    p = sub.add_parser("verify-formula", help="check the flow form of the on-site interaction")
    common(p)
    p.add_argument("--to", type=_ring_size, help="sweep ring sizes n..TO")
    p.add_argument("--perturb", type=int, metavar="INDEX", help="negative control: shift one flow coefficient by 1/1000")

    p = sub.add_parser("verify-flow", help="check the full flow Hamiltonian against the site one")
    common(p, params=True)

    p = sub.add_parser("golden", help="compare against the closed forms for n = 3, 4, 5")
    common(p, params=True)

    p = sub.add_parser("build", help="emit a Hamiltonian polynomial")
    common(p, params=True)
    p.add_argument("--rep", choices=("site", "flow"), default="site")

    p = sub.add_parser("basis", help="enumerate a fixed-N Fock sector")
    common(p, particles=True)

    p = sub.add_parser("spectrum", help="sorted eigenvalues in a fixed-N sector")
    common(p, params=True, particles=True)
    p.add_argument("--rep", choices=("site", "flow"), default="site")
    p.add_argument("--compare", action="store_true", help="compare site and flow spectra")
    p.add_argument("--perturb", type=int, metavar="INDEX", help="negative control: shift one flow interaction coefficient (and its adjoint) by 1/1000")
    return parser


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _formula_report(n: int, perturb: int | None):
    start = time.perf_counter()
    flow = None
    if perturb is not None:
        flow = perturb_coefficient(fundamental_sum(n), perturb)
    report = verify_fundamental_formula(n, flow)
    return report, time.perf_counter() - start


def _cmd_verify_formula(args) -> tuple[int, str]:
    last = args.to if args.to is not None else args.n
    if last < args.n:
        raise UsageError(f"--to {last} is below --n {args.n}")
    ns = list(range(args.n, last + 1))
    workers = min(_threads(), len(ns))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_formula_report, ns, [args.perturb] * len(ns)))
    else:
        results = [_formula_report(n, args.perturb) for n in ns]
    for report, elapsed in results:
        print(f"n={report.n}: {elapsed:.2f}s", file=sys.stderr)
    ok = all(r.passed for r, _ in results)
    if args.format == "json":
        payload = json.dumps([r.to_json() for r, _ in results], indent=2)
    else:
        payload = "\n".join(r.summary() for r, _ in results)
    return (0 if ok else 1), payload


def _params(args) -> HamiltonianParams:
    return HamiltonianParams(args.n, args.J, args.U)


def _report_payload(report, fmt: str) -> str:
    return json.dumps(report.to_json(), indent=2) if fmt == "json" else report.summary()


def _cmd_verify_flow(args) -> tuple[int, str]:
    report = verify_flow_representation(_params(args))
    return (0 if report.passed else 1), _report_payload(report, args.format)


def _cmd_golden(args) -> tuple[int, str]:
    if args.n not in (3, 4, 5):
        raise UsageError(f"golden closed forms exist for n = 3, 4, 5 only, got {args.n}")
    report = verify_golden(_params(args))
    return (0 if report.passed else 1), _report_payload(report, args.format)


def _cmd_build(args) -> tuple[int, str]:
    params = _params(args)
    poly = build_site(params) if args.rep == "site" else build_flow(params)
    if args.format == "json":
        return 0, json.dumps(hamiltonian_to_json(poly, args.rep, params), indent=2)
    symbol = "a" if args.rep == "site" else "b"
    return 0, "\n".join(f"{c}\t{m.label(symbol)}" for m, c in poly.items())


def _cmd_basis(args) -> tuple[int, str]:
    basis = enumerate_basis(args.n, args.particles)
    if args.format == "json":
        data = {
            "n": args.n,
            "particles": args.particles,
            "size": len(basis),
            "states": [list(s) for s in basis.states],
        }
        return 0, json.dumps(data, indent=2)
    lines = [f"size {len(basis)}"] + [" ".join(map(str, s)) for s in basis.states]
    return 0, "\n".join(lines)


def _eigenvalues(poly, N):
    return hermitian_eigenvalues(operator_matrix(poly, enumerate_basis(poly.n_modes, N)))


def _cmd_spectrum(args) -> tuple[int, str]:
    params = _params(args)
    flow_poly = None
    if args.compare or args.rep == "flow":
        flow_poly = build_flow(params)
        if args.perturb is not None:
            inter = perturb_coefficient(build_flow_interaction(params), args.perturb, hermitian=True)
            flow_poly = build_flow_hopping(params) + inter
    if not args.compare:
        poly = build_site(params) if args.rep == "site" else flow_poly
        vals = [float(v) for v in _eigenvalues(poly, args.particles)]
        if args.format == "json":
            return 0, json.dumps({"params": params.to_json(), "particles": args.particles, "rep": args.rep, "eigenvalues": vals}, indent=2)
        return 0, "\n".join(repr(v) for v in vals)

    site_vals = _eigenvalues(build_site(params), args.particles)
    flow_vals = _eigenvalues(flow_poly, args.particles)
    ok, dev = spectra_match(site_vals, flow_vals, SPECTRAL_TOL)
    if args.format == "json":
        data = {
            "params": params.to_json(),
            "particles": args.particles,
            "site": [float(v) for v in site_vals],
            "flow": [float(v) for v in flow_vals],
            "max_deviation": dev,
            "tolerance": SPECTRAL_TOL,
            "passed": ok,
        }
        payload = json.dumps(data, indent=2)
    else:
        payload = f"dimension {len(site_vals)}\nmax deviation {dev:.3e} ({'passed' if ok else 'FAILED'}, tol {SPECTRAL_TOL:g})"
    return (0 if ok else 1), payload


COMMANDS = {
    "verify-formula": _cmd_verify_formula,
    "verify-flow": _cmd_verify_flow,
    "golden": _cmd_golden,
    "build": _cmd_build,
    "basis": _cmd_basis,
    "spectrum": _cmd_spectrum,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, payload = COMMANDS[args.command](args)
    except (UsageError, IndexError) as exc:
        print(f"bosonflow: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        sys.stdout.write(payload + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
