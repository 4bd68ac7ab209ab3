"""Command-line front end.

    numphase analyze STATE_SPEC
    numphase sweep CONFIG
    numphase eigen --dim D
    numphase selftest

Exit codes: 0 success, 1 validation/input error, 2 numerical check failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .specfile import SpecError, parse_state_spec
from .spectral import eigenstate_report, solve_eigen
from .state import DEFAULT_DIM, GRID_FACTOR, AliasingError, Tolerances, ZeroStateError
from .sweep import parse_sweep_config, run_sweep, summarize, sweep_csv
from .uncertainty import CSV_COLUMNS, Classification, analyze, fmt, report_row

log = logging.getLogger("numphase")

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--dim", type=int, default=None, help=f"truncation size D (default {DEFAULT_DIM})")
    p.add_argument("--grid", type=int, default=None, help=f"phase grid points M (default {GRID_FACTOR}*D)")
    p.add_argument("--tol-eq", type=float, default=None, help="equality tolerance override")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--naive-composition", action="store_true",
                   help="differentiate phi*psi spectrally instead of by the product rule (diagnostic)")
    p.add_argument("--out", type=Path, default=None, help="write CSV here instead of stdout")
    p.add_argument("--workers", type=int, default=1, help="processes for sweep evaluation")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="numphase", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="diagnostics for one state")
    a.add_argument("spec", type=Path)
    s = sub.add_parser("sweep", parents=[common], help="sweep a superposition family")
    s.add_argument("config", type=Path)
    sub.add_parser("eigen", parents=[common], help="spectrum and eigenstate moments")
    sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    return parser


def _tolerances(args) -> Tolerances:
    tol = Tolerances()
    if args.tol_eq is not None:
        tol = replace(tol, eq_tol=args.tol_eq)
    return tol


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_analyze(args) -> int:
    state = parse_state_spec(args.spec.read_text())
    if args.dim is not None:
        state = state.padded(args.dim)
    tol = _tolerances(args)
    report = analyze(state, m=args.grid, tol=tol, naive=args.naive_composition, state_id=args.spec.stem)

    buf = io.StringIO()
    buf.write(f"# normalization scale: {fmt(state.scale)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerow(report_row(report))
    _emit(buf.getvalue(), args.out)

    print(f"state {args.spec.name}: {report.classification.value}", file=sys.stderr)
    print(f"  dN = {report.delta_n:.6g}   dPhi = {report.delta_phi:.6g}   "
          f"dN*dPhi = {report.schwartz_lhs:.6g}", file=sys.stderr)
    print(f"  |(dN psi, dPhi psi)| = {report.schwartz_rhs:.6g}   "
          f"|<[N,Phi]>|/2 = {report.rsur_rhs:.6g}   |r_NPhi| = {report.boundary:.6g}", file=sys.stderr)
    if report.classification is Classification.DEGENERATE:
        print("  dN = 0: the Schwartz bound reduces to the trivial equality 0 = 0", file=sys.stderr)
    if report.schwartz_lhs < report.schwartz_rhs - tol.eq_tol:
        log.error("Schwartz bound violated")
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = parse_sweep_config(
        args.config.read_text(), dim=args.dim, grid=args.grid, seed=args.seed)
    config = replace(config, tolerances=_tolerances(args), naive=args.naive_composition)
    rows = run_sweep(config, workers=args.workers)
    _emit(sweep_csv(rows, config), args.out)
    s = summarize(rows, config)
    print(" ".join(f"{k}={v}" for k, v in s.counts.items()), file=sys.stderr)
    if s.schwartz_violations:
        log.error("%d grid points violate the Schwartz bound", s.schwartz_violations)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_eigen(args) -> int:
    dim = args.dim or DEFAULT_DIM
    result = solve_eigen(dim)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("n", "energy", "delta_n", "delta_phi", "re_cov", "im_cov"))
    for n, energy in result.levels:
        rep = eigenstate_report(n, max(dim, 2), m=args.grid, tol=_tolerances(args))
        writer.writerow([n, fmt(energy), fmt(rep.delta_n), fmt(rep.delta_phi), fmt(rep.cov.real), fmt(rep.cov.imag)])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import checks_csv, run_checks

    seed = args.seed or 0
    checks = run_checks(seed=seed, tol_override=args.tol_eq, naive=args.naive_composition)
    _emit(checks_csv(checks, seed), args.out)
    failed = [c for c in checks if not c.ok]
    for c in checks:
        print(f"[{c.status}] {c.name}: measured {c.measured:.6g}, expected {c.expected:.6g}, tol {c.tol:.3g}",
              file=sys.stderr)
    return EXIT_NUMERIC if failed else EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "sweep": cmd_sweep, "eigen": cmd_eigen, "selftest": cmd_selftest}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SpecError, ZeroStateError, AliasingError, IndexError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
