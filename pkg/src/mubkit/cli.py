"""Command-line front end.

Exit codes: 0 = ran to completion (criterion verdicts are data, not
errors), 2 = input error (malformed file, unsupported dimension, bad
ranges), 3 = numerical failure.  Subcommands: construct-mubs, verify-mubs,
evaluate, scan, optimize, sample.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .criteria import (
    CriterionReport,
    isotropic_state,
    isotropic_threshold,
    predictability_criterion,
)
from .cv import QuadratureError, cv_criterion, cv_threshold
from .galois import UnsupportedFieldError
from .io import (
    FileFormatError,
    load_density_matrix,
    load_mub_set,
    save_mub_set,
)
from .mubs import (
    MubSet,
    UnsupportedDimensionError,
    construct_mub_set,
    fourier_pair,
    verify_mub_set,
)
from .multipartite import (
    MultipartiteState,
    aharonov_noise_threshold,
    aharonov_state,
    anticorrelation_criterion,
    white_noise_anticorrelation,
)
from .optimize import OptimizerConfig, maximize_criterion
from .qmath import DimensionError
from .sampling import estimate_criterion


def _resolve_mub(args, min_bases: int = 1) -> MubSet:
    if getattr(args, "mub_file", None):
        mub = load_mub_set(args.mub_file)
    elif getattr(args, "dim", None):
        mub = construct_mub_set(args.dim)
    else:
        raise DimensionError("provide --mub-file or -d/--dim")
    m = getattr(args, "bases", None)
    if m is not None:
        if not min_bases <= m <= mub.count:
            raise DimensionError(
                f"-m must be between {min_bases} and {mub.count}, got {m}"
            )
        mub = MubSet(mub.bases[:m])
    return mub


def _emit_json(args, payload: dict) -> None:
    if not getattr(args, "json", None):
        return
    text = json.dumps(payload, indent=2)
    if args.json == "-":
        print(text)
    else:
        Path(args.json).write_text(text)


def _print_report(report, labels: str = "C") -> None:
    values = report.c_values if isinstance(report, CriterionReport) else report.a_values
    for k, c in enumerate(values, start=1):
        print(f"  {labels}_{k} = {c:.9f}")
    print(f"  total  = {report.total:.9f}")
    print(f"  bound  = {report.bound:.9f}")
    print(f"  margin = {report.margin:+.3e}")
    print(f"  verdict: {'VIOLATED (entanglement certified)' if report.violated else 'not violated'}")


def cmd_construct_mubs(args) -> int:
    if args.fourier_pair:
        mub = fourier_pair(args.dim)
    else:
        mub = construct_mub_set(args.dim)
    save_mub_set(args.output, mub)
    print(f"wrote {mub.count} bases of dimension {mub.dim} to {args.output}")
    return 0


def cmd_verify_mubs(args) -> int:
    mub = load_mub_set(args.file, verify=False)
    report = verify_mub_set(mub, tol=args.tol)
    print(f"bases: {mub.count}, dimension: {mub.dim}")
    print(f"worst orthonormality defect: {report.worst_orthonormality_defect:.3e}")
    print(f"worst unbiasedness defect:   {report.worst_unbiasedness_defect:.3e}")
    if report.failing_pair is not None:
        print(f"first failing pair: {report.failing_pair}")
    print(f"verdict: {'PASS' if report.ok else 'FAIL'}")
    _emit_json(args, {
        "bases": mub.count,
        "dim": mub.dim,
        "orthonormality_defect": report.worst_orthonormality_defect,
        "unbiasedness_defect": report.worst_unbiasedness_defect,
        "pass": report.ok,
    })
    return 0


def cmd_evaluate(args) -> int:
    rho = load_density_matrix(args.state)
    mub = _resolve_mub(args, min_bases=1)

    if args.parties:
        state = MultipartiteState(args.parties, mub.dim, rho)
        report = anticorrelation_criterion(state, mub)
        print(f"state: {args.state} ({args.parties} parties, local dimension {mub.dim})")
        print(f"common bases: {mub.count}")
        _print_report(report, labels="A")
        _emit_json(args, {
            "kind": "anticorrelation",
            "parties": args.parties,
            "dim": mub.dim,
            "bases": mub.count,
            "a_values": list(report.a_values),
            "total": report.total,
            "bound": report.bound,
            "margin": report.margin,
            "violated": report.violated,
        })
        return 0

    mub_b = mub.conjugate() if args.conjugate_b else mub
    payload: dict = {
        "kind": "predictability",
        "dim": mub.dim,
        "bases": mub.count,
        "conjugate_b": args.conjugate_b,
        "relabel": args.relabel,
    }
    print(f"state: {args.state} (local dimension {mub.dim})")
    print(f"basis pairs: {mub.count}, B side "
          f"{'conjugated' if args.conjugate_b else 'identical'}"
          f"{', relabeled' if args.relabel else ''}")
    report = predictability_criterion(rho, mub, mub_b, relabel=args.relabel)
    _print_report(report)
    payload.update({
        "c_values": list(report.c_values),
        "total": report.total,
        "bound": report.bound,
        "margin": report.margin,
        "violated": report.violated,
    })

    if args.optimize:
        config = OptimizerConfig(restarts=args.restarts, max_sweeps=args.sweeps,
                                 seed=args.seed)
        result = maximize_criterion(rho, mub, config)
        print("after local-unitary optimization:")
        print(f"  best   = {result.value:.9f}")
        print(f"  margin = {result.margin:+.3e}")
        print(f"  verdict: {'VIOLATED (entanglement certified)' if result.violated else 'not violated'}")
        payload["optimized"] = {
            "value": result.value,
            "margin": result.margin,
            "violated": result.violated,
            "converged": result.converged,
            "sweeps": result.sweeps,
        }
    _emit_json(args, payload)
    return 0


def _write_csv(path, header: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([row[key] for key in header])


def _scan_figure(args, kind: str, mode: str, rows: list[dict]) -> None:
    if args.no_plot or (kind == "cv" and mode == "thresholds"):
        return
    from .plotting import save_scan_figure

    figure_path = Path(args.output).with_suffix(".png")
    save_scan_figure(kind, mode, rows, figure_path)
    print(f"wrote figure {figure_path}")


def _fmt(x: float) -> float:
    return float(f"{x:.12g}")


def cmd_scan(args) -> int:
    kind, mode = args.kind, args.mode
    rows: list[dict] = []

    if kind == "isotropic":
        if not args.dim:
            raise DimensionError("isotropic scan needs -d/--dim")
        mub = _resolve_mub(args, min_bases=2) if (args.mub_file or args.bases) else \
            construct_mub_set(args.dim)
        if mode == "grid":
            m = args.bases or mub.count
            sub = MubSet(mub.bases[:m])
            header = ["alpha", "value", "bound", "violated"]
            for alpha in np.linspace(args.alpha_min, args.alpha_max, args.steps):
                report = predictability_criterion(
                    isotropic_state(args.dim, alpha), sub)
                rows.append({"alpha": _fmt(alpha), "value": _fmt(report.total),
                             "bound": _fmt(report.bound),
                             "violated": int(report.violated)})
        else:
            header = ["m", "threshold"]
            m_max = args.m_max or mub.count
            for m in range(args.m_min, m_max + 1):
                rows.append({"m": m,
                             "threshold": _fmt(isotropic_threshold(args.dim, m, mub))})

    elif kind == "aharonov":
        if not args.parties:
            raise DimensionError("aharonov scan needs -n/--parties")
        n = args.parties
        if mode == "grid":
            m = args.bases or n + 1
            mub = MubSet(construct_mub_set(n).bases[:m])
            pure = anticorrelation_criterion(aharonov_state(n), mub).total
            noise = m * white_noise_anticorrelation(n)
            bound = 1.0 + (m - 1) / n
            header = ["alpha", "value", "bound", "violated"]
            for alpha in np.linspace(args.alpha_min, args.alpha_max, args.steps):
                value = alpha * pure + (1 - alpha) * noise
                rows.append({"alpha": _fmt(alpha), "value": _fmt(value),
                             "bound": _fmt(bound),
                             "violated": int(value - bound > 1e-9)})
        else:
            header = ["m", "threshold"]
            m_max = args.m_max or n + 1
            for m in range(args.m_min, m_max + 1):
                rows.append({"m": m, "threshold": _fmt(aharonov_noise_threshold(n, m))})

    else:  # cv
        if mode == "grid":
            header = ["r", "c_xx", "c_pp", "i", "bound", "violated"]
            for r in np.linspace(args.r_min, args.r_max, args.steps):
                report = cv_criterion(float(r), method=args.method)
                rows.append({
                    "r": _fmt(r),
                    "c_xx": _fmt(report.c_values[0]),
                    "c_pp": _fmt(report.c_values[1]),
                    "i": _fmt(report.total), "value": _fmt(report.total),
                    "bound": _fmt(report.bound), "violated": int(report.violated),
                })
        else:
            result = cv_threshold()
            print(result.summary())
            header = ["method", "threshold"]
            rows = [
                {"method": "quadrature", "threshold": _fmt(result.quadrature)},
                {"method": "closed_form", "threshold": _fmt(result.closed_form)},
                {"method": "literature", "threshold": _fmt(result.literature)},
            ]

    _write_csv(args.output, header, rows)
    print(f"wrote {len(rows)} rows to {args.output}")
    _scan_figure(args, kind, mode, rows)
    return 0


def cmd_optimize(args) -> int:
    rho = load_density_matrix(args.state)
    mub = _resolve_mub(args)
    config = OptimizerConfig(restarts=args.restarts, max_sweeps=args.sweeps,
                             seed=args.seed, relabel=not args.no_relabel)
    result = maximize_criterion(rho, mub, config)
    print(f"state: {args.state} (local dimension {mub.dim}, {mub.count} basis pairs)")
    print(f"best value = {result.value:.9f}")
    print(f"bound      = {result.bound:.9f}")
    print(f"margin     = {result.margin:+.3e}")
    print(f"converged  = {result.converged} after {result.sweeps} sweeps")
    print(f"verdict: {'VIOLATED (entanglement certified)' if result.violated else 'not violated'}")
    print(f"params A thetas: {np.round(result.params_a.thetas, 6).tolist()}")
    print(f"params A phis:   {np.round(result.params_a.phis, 6).tolist()}")
    print(f"params B thetas: {np.round(result.params_b.thetas, 6).tolist()}")
    print(f"params B phis:   {np.round(result.params_b.phis, 6).tolist()}")
    _emit_json(args, {
        "kind": "optimize",
        "dim": mub.dim,
        "bases": mub.count,
        "value": result.value,
        "bound": result.bound,
        "margin": result.margin,
        "violated": result.violated,
        "converged": result.converged,
        "sweeps": result.sweeps,
        "params_a": {"thetas": result.params_a.thetas.tolist(),
                     "phis": result.params_a.phis.tolist()},
        "params_b": {"thetas": result.params_b.thetas.tolist(),
                     "phis": result.params_b.phis.tolist()},
    })
    return 0


def cmd_sample(args) -> int:
    rho = load_density_matrix(args.state)
    mub = _resolve_mub(args)
    mub_b = mub.conjugate() if args.conjugate_b else mub
    result = estimate_criterion(rho, mub, mub_b, shots=args.shots, seed=args.seed)
    print(f"state: {args.state}, {args.shots} shots per basis pair, seed {args.seed}")
    for k, (c, e) in enumerate(zip(result.c_estimates, result.c_errors), start=1):
        print(f"  C_{k} = {c:.6f} +- {e:.6f}")
    print(f"  total = {result.total:.6f} +- {result.total_error:.6f}")
    print(f"  bound = {result.bound:.6f}")
    _emit_json(args, {
        "kind": "sample",
        "dim": mub.dim,
        "bases": mub.count,
        "shots": args.shots,
        "seed": args.seed,
        "c_estimates": list(result.c_estimates),
        "c_errors": list(result.c_errors),
        "total": result.total,
        "total_error": result.total_error,
        "bound": result.bound,
    })
    return 0


def _add_mub_source(parser, with_bases: bool = True) -> None:
    parser.add_argument("--mub-file", help="MUB set file (JSON)")
    parser.add_argument("-d", "--dim", type=int,
                        help="build the complete set for this dimension")
    if with_bases:
        parser.add_argument("-m", "--bases", type=int,
                            help="use only the first M bases of the set")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mubkit",
        description="Mutually unbiased bases and correlation-based "
                    "entanglement criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct-mubs", help="build a MUB set and write it to file")
    p.add_argument("-d", "--dim", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--fourier-pair", action="store_true",
                   help="emit the two-basis Fourier pair (any dimension)")
    p.set_defaults(func=cmd_construct_mubs)

    p = sub.add_parser("verify-mubs", help="verify a MUB set file")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--json", help="write a JSON report (path or '-')")
    p.set_defaults(func=cmd_verify_mubs)

    p = sub.add_parser("evaluate", help="evaluate the criterion on a state file")
    p.add_argument("state", help="density-matrix file (JSON)")
    _add_mub_source(p)
    p.add_argument("--conjugate-b", action=argparse.BooleanOptionalAction,
                   default=True, help="use the conjugate set on the B side")
    p.add_argument("--relabel", action="store_true",
                   help="optimize outcome labels per basis pair")
    p.add_argument("--optimize", action="store_true",
                   help="also maximize over local unitaries")
    p.add_argument("--parties", type=int,
                   help="treat the state as this many parties and use the "
                        "anti-correlation criterion with common bases")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--sweeps", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="write a JSON report (path or '-')")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("scan", help="parameter scans written as CSV (+ figure)")
    p.add_argument("kind", choices=["isotropic", "aharonov", "cv"])
    p.add_argument("--mode", choices=["grid", "thresholds"], default="grid")
    p.add_argument("-o", "--output", required=True, help="CSV output path")
    _add_mub_source(p)
    p.add_argument("-n", "--parties", type=int, help="party count (aharonov)")
    p.add_argument("--alpha-min", type=float, default=0.0)
    p.add_argument("--alpha-max", type=float, default=1.0)
    p.add_argument("--r-min", type=float, default=0.0)
    p.add_argument("--r-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--method", choices=["quadrature", "closed-form"],
                   default="quadrature", help="evaluation route (cv grid)")
    p.add_argument("--no-plot", action="store_true",
                   help="skip the companion PNG figure")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("optimize", help="maximize the criterion over local unitaries")
    p.add_argument("state", help="density-matrix file (JSON)")
    _add_mub_source(p)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--sweeps", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-relabel", action="store_true")
    p.add_argument("--json", help="write a JSON report (path or '-')")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sample", help="finite-shot estimation of the criterion")
    p.add_argument("state", help="density-matrix file (JSON)")
    _add_mub_source(p)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--conjugate-b", action=argparse.BooleanOptionalAction,
                   default=True)
    p.add_argument("--json", help="write a JSON report (path or '-')")
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (FileFormatError, UnsupportedDimensionError, UnsupportedFieldError,
            DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
