"""Command-line interface.

Three subcommands:

    sweep    parameter sweep over a p-family, written as versioned CSV
             (plus a PNG figure next to it unless --no-figure)
    analyze  per-partition distillation report for one state, from a JSON
             density file or a built-in family
    verify   randomized property suites with a pass/fail table

Exit codes: 0 success, 2 I/O error, 64 usage error, 65 invalid data,
70 internal check failure.  All floating-point output uses 10 significant
digits, and sweep output is byte-deterministic for identical flags.
Set COHDISTILL_THREADS > 1 to compute sweep rows in a process pool.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .correlations import correlation_row
from .densmat import load_density, partial_trace
from .distill import DEFAULT_CONFIG, OptimizerConfig, c_cop, tau
from .coherence import qi_relative_entropy
from .errors import CohdistillError, DomainError, InvalidState
from .states import FAMILY_NAMES, FamilyParam, ghz_type, make_family, w_type
from .verify import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_IO = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70

CSV_HEADER = "# cohdistill-csv v1"
_SWEEPABLE = ("w", "ghz")

_CSV_COLUMNS = (
    "p", "c_abc", "c_ab", "c_ac", "tau", "delta_sef", "d3", "three_tangle",
    "theta_abc", "phi_abc", "theta_ab", "phi_ab", "theta_ac", "phi_ac",
)


class UsageError(Exception):
    """Bad flags or arguments; maps to exit code 64."""


@dataclass(frozen=True)
class SweepRow:
    """One sweep point: rates, correlation measures, and optimal angles."""

    p: float
    c_abc: float
    c_ab: float
    c_ac: float
    tau: float
    delta_sef: float
    d3: float
    three_tangle: float
    theta_abc: float
    phi_abc: float
    theta_ab: float
    phi_ab: float
    theta_ac: float
    phi_ac: float


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise UsageError(f"--grid wants NxM, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise UsageError(f"--grid wants NxM integers, got {text!r}") from exc


def _config_from_args(args) -> OptimizerConfig:
    grid = _parse_grid(args.grid) if args.grid else DEFAULT_CONFIG.coarse_grid
    try:
        return OptimizerConfig(
            coarse_grid=grid,
            refine_iterations=args.refine if args.refine is not None
            else DEFAULT_CONFIG.refine_iterations,
            refine_shrink=DEFAULT_CONFIG.refine_shrink,
            tolerance=args.tol if args.tol is not None else DEFAULT_CONFIG.tolerance,
        )
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _sweep_point(family: str, p: float, cfg: OptimizerConfig, ancilla: str) -> SweepRow:
    state = w_type(p) if family == "w" else ghz_type(p)
    parts = tuple(name for name in state.labels if name != ancilla)
    report = tau(state, ancilla, parts[0], parts[1], cfg)
    corr = correlation_row(state)
    return SweepRow(
        p=p,
        c_abc=report.c_abc.value,
        c_ab=report.c_ab.value,
        c_ac=report.c_ac.value,
        tau=report.tau,
        delta_sef=corr.delta_sef,
        d3=corr.d3,
        three_tangle=corr.three_tangle,
        theta_abc=report.c_abc.optimal_basis.theta,
        phi_abc=report.c_abc.optimal_basis.phi,
        theta_ab=report.c_ab.optimal_basis.theta,
        phi_ab=report.c_ab.optimal_basis.phi,
        theta_ac=report.c_ac.optimal_basis.theta,
        phi_ac=report.c_ac.optimal_basis.phi,
    )


def _sweep_worker(task: tuple) -> SweepRow:
    return _sweep_point(*task)


def write_sweep_csv(rows, stream) -> None:
    """Versioned CSV; the tau column is recomputed from the rate columns."""
    stream.write(CSV_HEADER + "\n")
    stream.write(",".join(_CSV_COLUMNS) + "\n")
    for row in rows:
        recomputed = row.c_abc - row.c_ab - row.c_ac
        cells = (
            row.p, row.c_abc, row.c_ab, row.c_ac, recomputed,
            row.delta_sef, row.d3, row.three_tangle,
            row.theta_abc, row.phi_abc, row.theta_ab, row.phi_ab,
            row.theta_ac, row.phi_ac,
        )
        stream.write(",".join(_fmt(cell) for cell in cells) + "\n")


def cmd_sweep(args) -> int:
    family = args.family.lower()
    if family not in _SWEEPABLE:
        raise UsageError(
            f"family {args.family!r} has no sweep parameter; sweepable: {_SWEEPABLE}"
        )
    if not 0.0 <= args.p_start <= args.p_end <= 1.0:
        raise UsageError(f"need 0 <= p-start <= p-end <= 1, got [{args.p_start}, {args.p_end}]")
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    cfg = _config_from_args(args)
    ancilla = args.ancilla or "A"
    if ancilla not in ("A", "B", "C"):
        raise UsageError(f"--ancilla must be one of A, B, C for family sweeps, got {ancilla!r}")
    if args.steps == 1:
        p_values = [args.p_start]
    else:
        span = args.p_end - args.p_start
        p_values = [args.p_start + span * i / (args.steps - 1) for i in range(args.steps)]
    tasks = [(family, p, cfg, ancilla) for p in p_values]

    threads = int(os.environ.get("COHDISTILL_THREADS", "1"))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_worker, tasks))
    else:
        rows = [_sweep_point(*task) for task in tasks]

    out = Path(args.out)
    with out.open("w", newline="") as stream:
        write_sweep_csv(rows, stream)
    print(f"wrote {out} ({len(rows)} rows)")
    if not args.no_figure:
        from .plotting import render_sweep_figure

        figure_path = out.with_suffix(".png")
        render_sweep_figure(rows, figure_path, family)
        print(f"wrote {figure_path}")
    return EXIT_OK


def _load_analyze_state(args):
    if args.state is not None and args.family is not None:
        raise UsageError("give either a state file or --family, not both")
    if args.state is None and args.family is None:
        raise UsageError("analyze needs a state file or --family")
    if args.family is not None:
        family = args.family.lower()
        if family not in FAMILY_NAMES:
            raise UsageError(f"unknown family {args.family!r}; choose from {FAMILY_NAMES}")
        try:
            return make_family(FamilyParam(family, p=args.p, n=args.n))
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
    return load_density(args.state)


def cmd_analyze(args) -> int:
    state = _load_analyze_state(args)
    cfg = _config_from_args(args)
    ancilla = args.ancilla or state.labels[0]
    if ancilla not in state.labels:
        raise UsageError(f"ancilla {ancilla!r} not among labels {state.labels}")
    targets = tuple(name for name in state.labels if name != ancilla)
    if not targets:
        raise UsageError("state has no non-ancilla subsystem to distill")

    partitions = [(name,) for name in targets]
    if len(targets) > 1:
        partitions.append(targets)
    results = []
    for part in partitions:
        report = c_cop(state, ancilla, part, cfg)
        reduced = partial_trace(state, (ancilla,) + part)
        bound = qi_relative_entropy(reduced, part)
        results.append({
            "distill_on": list(part),
            "c_cop": report.value,
            "theta": report.optimal_basis.theta,
            "phi": report.optimal_basis.phi,
            "qi_bound": bound,
            "gap": bound - report.value,
        })
    tau_block = None
    if state.n_qubits == 3:
        report = tau(state, ancilla, targets[0], targets[1], cfg)
        tau_block = {
            "parts": [targets[0], targets[1]],
            "c_abc": report.c_abc.value,
            "c_ab": report.c_ab.value,
            "c_ac": report.c_ac.value,
            "tau": report.tau,
        }

    if args.json:
        payload = {
            "labels": list(state.labels),
            "ancilla": ancilla,
            "partitions": [
                {key: (float(_fmt(v)) if isinstance(v, float) else v)
                 for key, v in entry.items()}
                for entry in results
            ],
            "tau": None if tau_block is None else {
                key: (float(_fmt(v)) if isinstance(v, float) else v)
                for key, v in tau_block.items()
            },
        }
        print(json.dumps(payload, indent=2))
        return EXIT_OK

    print(f"labels: {', '.join(state.labels)}   ancilla: {ancilla}")
    for entry in results:
        part = "".join(entry["distill_on"])
        print(
            f"  distill {part:<8} c_cop={_fmt(entry['c_cop']):>13}  "
            f"theta={_fmt(entry['theta'])}  phi={_fmt(entry['phi'])}  "
            f"qi_bound={_fmt(entry['qi_bound'])}  gap={_fmt(entry['gap'])}"
        )
    if tau_block is not None:
        print(
            f"  tau = c_abc - c_ab - c_ac = {_fmt(tau_block['c_abc'])} "
            f"- {_fmt(tau_block['c_ab'])} - {_fmt(tau_block['c_ac'])} "
            f"= {_fmt(tau_block['tau'])}"
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITE_NAMES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {SUITE_NAMES}")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    outcomes = run_suite(args.suite, args.trials, args.seed)
    width = max(len(outcome.property_name) for outcome in outcomes)
    all_ok = True
    for outcome in outcomes:
        status = "pass" if outcome.passed else "FAIL"
        all_ok = all_ok and outcome.passed
        print(
            f"{status}  {outcome.property_name:<{width}}  trials={outcome.trials:<5d} "
            f"failures={outcome.failures:<4d} worst_slack={_fmt(outcome.worst_slack):>13}  "
            f"seed={outcome.seed}"
        )
    return EXIT_OK if all_ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohdistill",
        description="Assisted coherence distillation: sweeps, state reports, property suites.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="sweep a p-family and write CSV (+ PNG figure)")
    sweep.add_argument("--family", required=True, help="family to sweep: w or ghz")
    sweep.add_argument("--p-start", type=float, default=0.0)
    sweep.add_argument("--p-end", type=float, default=1.0)
    sweep.add_argument("--steps", type=int, default=21)
    sweep.add_argument("--out", required=True, help="CSV output path")
    sweep.add_argument("--ancilla", default=None, help="measured subsystem (default A)")
    sweep.add_argument("--no-figure", action="store_true", help="skip the PNG figure")
    sweep.set_defaults(func=cmd_sweep)

    analyze = sub.add_parser("analyze", help="report rates and bounds for one state")
    analyze.add_argument("state", nargs="?", default=None, help="density JSON file")
    analyze.add_argument("--family", default=None,
                         help=f"built-in state instead of a file: {', '.join(FAMILY_NAMES)}")
    analyze.add_argument("--p", type=float, default=None, help="family parameter")
    analyze.add_argument("--n", type=int, default=None, help="qubit count for ghz-n / w-n")
    analyze.add_argument("--ancilla", default=None, help="measured subsystem (default: first label)")
    analyze.add_argument("--json", action="store_true", help="machine-readable output")
    analyze.set_defaults(func=cmd_analyze)

    verify = sub.add_parser("verify", help="run a property suite")
    verify.add_argument("suite", help=f"one of {', '.join(SUITE_NAMES)}")
    verify.add_argument("--trials", type=int, default=50)
    verify.add_argument("--seed", type=int, default=1234)
    verify.set_defaults(func=cmd_verify)

    for cmd in (sweep, analyze):
        cmd.add_argument("--grid", default=None, metavar="NxM",
                         help="coarse optimizer grid (default 91x73)")
        cmd.add_argument("--refine", type=int, default=None, metavar="K",
                         help="refinement iterations (default 40)")
        cmd.add_argument("--tol", type=float, default=None, metavar="X",
                         help="optimizer tolerance (default 1e-6)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidState as exc:
        print(f"invalid state data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CohdistillError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
