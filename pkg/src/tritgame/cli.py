"""Batch command-line front end with deterministic, hashable reports.

Every command emits a JSON envelope: command name, config echo, result
payload, the SHA-256 of the canonical payload encoding, package version
and wall-clock duration.  The hash covers only the payload, so two runs
with the same command line and seed are byte-identical in the hashed
region.  Probabilities always carry exact numerator/denominator next to
their float rendering.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__, protocol
from .bounds import convergence_table
from .classical import (
    DIVISION_NAMES,
    Strategy,
    StrategyProfile,
    best_homogeneous,
    canonical_division,
    evaluate_collapsed,
    evaluate_exhaustive,
    ten_player_worked_example,
)
from .combinat import grouped_sum
from .protocol import (
    AnalyticEngineLockedError,
    VerificationError,
    run_analytic,
    run_dense,
    sample_admissible,
    verify_class_stepping,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _fraction_payload(value: Fraction) -> dict:
    return {
        "numerator": value.numerator,
        "denominator": value.denominator,
        "float": float(value),
    }


def _envelope(command: str, config: dict, payload: dict, started: float) -> dict:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return {
        "command": command,
        "config": config,
        "payload": payload,
        "payload_sha256": hashlib.sha256(canonical.encode()).hexdigest(),
        "version": __version__,
        "duration_seconds": round(time.perf_counter() - started, 6),
    }


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_envelope(envelope: dict, output: str | None) -> None:
    _emit(json.dumps(envelope, indent=2, sort_keys=True), output)


def _make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    # One 64-bit seed; workers/streams derive from (seed, counter).
    return np.random.default_rng([seed, stream])


def _parse_strategy(text: str) -> Strategy:
    if text in DIVISION_NAMES:
        return canonical_division(text)
    return Strategy.from_string(text)


def _parse_profile(text: str, k: int) -> StrategyProfile:
    strategies: list[Strategy] = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            item, count = part.rsplit(":", 1)
            strategies.extend([_parse_strategy(item)] * int(count))
        else:
            strategies.append(_parse_strategy(part))
    if len(strategies) != k:
        raise ValueError(f"profile lists {len(strategies)} parties but k={k}")
    return StrategyProfile(tuple(strategies))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_quantum_verify(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    config = {"k": list(args.k), "tolerance": args.tolerance, "tampered": args.debug_tamper}
    try:
        cert = verify_class_stepping(
            ks=tuple(args.k),
            tol=args.tolerance,
            _perturb=1e-6 if args.debug_tamper else 0.0,
        )
        payload = {
            "ok": True,
            "checks": [
                {
                    "name": "root-branch-search",
                    "ok": True,
                    "branch": list(cert.branch),
                },
                {
                    "name": "root-cube-and-class-step",
                    "ok": cert.root_check.ok,
                    "max_deviation": cert.root_check.max_deviation,
                    "phase_real": cert.root_check.phase.real,
                    "phase_imag": cert.root_check.phase.imag,
                },
                {
                    "name": "dim2-swap",
                    "ok": cert.swap_check.ok,
                    "max_deviation": cert.swap_check.max_deviation,
                },
                {
                    "name": "class-sweep",
                    "ok": True,
                    "k": list(cert.checked_k),
                    "bit_vectors_checked": [grouped_sum(k, 0, 3) for k in cert.checked_k],
                },
            ],
            "token": cert.token,
        }
        code = EXIT_OK
    except (VerificationError, LookupError) as exc:
        payload = {"ok": False, "error": str(exc)}
        code = EXIT_CHECK_FAILED
    _emit_envelope(_envelope("quantum-verify", config, payload, started), args.output)
    return code


def cmd_quantum_run(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    config = {
        "k": args.k,
        "trials": args.trials,
        "engine": args.engine,
        "seed": args.seed,
        "seed_scheme": "numpy default_rng([seed, stream]); single stream 0",
    }
    if args.engine == "dense" and args.k > protocol.DENSE_MAX_K:
        print(f"error: dense engine supports k <= {protocol.DENSE_MAX_K}", file=sys.stderr)
        return EXIT_USAGE

    if args.engine == "analytic":
        if args.token:
            token = args.token
        else:
            try:
                verify_class_stepping()
            except VerificationError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_CHECK_FAILED
            token = protocol.analytic_token()
    rng = _make_rng(args.seed)
    successes = 0
    records = []
    try:
        for _ in range(args.trials):
            reg = sample_admissible(args.k, rng)
            if args.engine == "dense":
                run = run_dense(reg, rng)
            else:
                run = run_analytic(reg, rng, token=token)
            successes += int(run.ok)
            if args.records:
                record = run.to_record()
                record["seed"] = args.seed
                records.append(record)
    except AnalyticEngineLockedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    payload = {
        "k": args.k,
        "engine": args.engine,
        "trials": args.trials,
        "successes": successes,
        "failures": args.trials - successes,
    }
    if args.records:
        payload["records"] = records
    _emit_envelope(_envelope("quantum-run", config, payload, started), args.output)
    return EXIT_OK if successes == args.trials else EXIT_CHECK_FAILED


def cmd_classical(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    if args.subcommand == "example":
        report = ten_player_worked_example()
        payload = {
            "k": report.k,
            "strategy": report.strategy.to_string(),
            "transcript": "all parties send 0",
            "per_m_counts": {str(m): c for m, c in sorted(report.per_m_counts.items())},
            "g_label_by_m": {str(m): g for m, g in sorted(report.g_label_by_m.items())},
            "g_totals": _g_totals(report),
            "total": report.total,
            "majority_value": report.majority_value,
            "majority_count": report.majority_count,
            "success": _fraction_payload(report.success),
            "label_note": report.label_note,
        }
        config = {"subcommand": "example"}
        _emit_envelope(_envelope("classical", config, payload, started), args.output)
        return EXIT_OK

    if args.subcommand == "eval":
        config = {
            "subcommand": "eval",
            "k": args.k,
            "strategy": args.strategy,
            "profile": args.profile,
            "long_run": args.long_run,
        }
        try:
            if args.strategy:
                profile = StrategyProfile.homogeneous(_parse_strategy(args.strategy), args.k)
            elif args.profile:
                profile = _parse_profile(args.profile, args.k)
            else:
                print("error: eval needs --strategy or --profile", file=sys.stderr)
                return EXIT_USAGE
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        collapsed = evaluate_collapsed(profile)
        payload = {
            "k": args.k,
            "profile": [s.to_string() for s in profile.strategies],
            "collapsed": _fraction_payload(collapsed),
        }
        code = EXIT_OK
        if args.k <= 7 or (args.k == 10 and args.long_run):
            exhaustive = evaluate_exhaustive(profile, long_run=args.long_run)
            payload["exhaustive"] = _fraction_payload(exhaustive)
            payload["evaluators_agree"] = exhaustive == collapsed
            if not payload["evaluators_agree"]:
                code = EXIT_CHECK_FAILED
        _emit_envelope(_envelope("classical", config, payload, started), args.output)
        return code

    # search
    config = {"subcommand": "search", "k": args.k}
    strategy, value = best_homogeneous(args.k)
    payload = {
        "k": args.k,
        "best_strategy": strategy.to_string(),
        "probability": _fraction_payload(value),
    }
    _emit_envelope(_envelope("classical", config, payload, started), args.output)
    return EXIT_OK


def _g_totals(report) -> dict:
    totals = [0, 0, 0]
    for m, count in report.per_m_counts.items():
        totals[report.g_label_by_m[m]] += count
    return {str(v): totals[v] for v in range(3)}


def _bounds_rows_payload(rows) -> list[dict]:
    return [
        {
            "family": r.family,
            "j": r.j,
            "i": r.i,
            "m": r.m,
            "a": r.a,
            "im_rule": None if r.im_rule is None else str(r.im_rule),
            "value_num": r.value.numerator,
            "value_den": r.value.denominator,
            "value_float": float(r.value),
            "gap_float": r.gap,
        }
        for r in rows
    ]


def cmd_bounds(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    im_rule = args.im_rule if args.im_rule == "max" else int(args.im_rule)
    config = {"family": args.family, "j": list(args.j), "im_rule": str(im_rule)}
    rows = convergence_table(args.family, args.j, im_rule=im_rule)
    row_dicts = _bounds_rows_payload(rows)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(row_dicts[0].keys()))
        writer.writeheader()
        writer.writerows(row_dicts)
        _emit(buf.getvalue(), args.output)
        return EXIT_OK
    payload = {"rows": row_dicts}
    _emit_envelope(_envelope("bounds", config, payload, started), args.output)
    return EXIT_OK


def cmd_gap_report(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    config = {
        "k": list(args.k),
        "trials": args.trials,
        "seed": args.seed,
        "seed_scheme": "numpy default_rng([seed, stream]); stream = index of k",
    }
    try:
        verify_class_stepping()
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    token = protocol.analytic_token()
    entries = []
    ok = True
    for stream, k in enumerate(args.k):
        rng = _make_rng(args.seed, stream)
        successes = 0
        for _ in range(args.trials):
            reg = sample_admissible(k, rng)
            successes += int(run_analytic(reg, rng, token=token).ok)
        strategy, value = best_homogeneous(k)
        ok = ok and successes == args.trials
        entries.append(
            {
                "k": k,
                "quantum": {"trials": args.trials, "successes": successes},
                "classical_best": {
                    "strategy": strategy.to_string(),
                    **_fraction_payload(value),
                },
                "baseline": _fraction_payload(Fraction(1, 3)),
            }
        )
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["k", "quantum_trials", "quantum_successes", "classical_strategy",
             "classical_num", "classical_den", "classical_float", "baseline_float"]
        )
        for e in entries:
            writer.writerow(
                [e["k"], e["quantum"]["trials"], e["quantum"]["successes"],
                 e["classical_best"]["strategy"], e["classical_best"]["numerator"],
                 e["classical_best"]["denominator"], e["classical_best"]["float"],
                 e["baseline"]["float"]]
            )
        _emit(buf.getvalue(), args.output)
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    payload = {"rows": entries}
    _emit_envelope(_envelope("gap-report", config, payload, started), args.output)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tritgame",
        description="Exact quantum/classical analysis of the one-trit communication game.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantum-verify", help="run the protocol verification suite")
    p.add_argument("--k", type=int, nargs="+", default=[4, 7], help="dense sweep sizes")
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--debug-tamper", action="store_true", help="inject a gate error (must fail)")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_quantum_verify)

    p = sub.add_parser("quantum-run", help="run protocol trials on sampled inputs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--engine", choices=("dense", "analytic"), default="dense")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--token", default=None, help="cached verification token for the analytic engine")
    p.add_argument("--records", action="store_true", help="include per-run records")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_quantum_run)

    p = sub.add_parser("classical", help="exact classical success probabilities")
    p.add_argument("subcommand", choices=("example", "eval", "search"))
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--strategy", default=None, help="division name or 6-trit string")
    p.add_argument(
        "--profile",
        default=None,
        help="comma-separated divisions/6-trit strings, optional :count (e.g. 'A:3,100122')",
    )
    p.add_argument("--long-run", action="store_true", help="allow exhaustive evaluation at k=10")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("bounds", help="convergence tables for the bound families")
    p.add_argument("--family", choices=("A", "F", "L", "N"), required=True)
    p.add_argument("--j", type=int, nargs="+", default=[5, 10, 20, 40, 60])
    p.add_argument("--im-rule", choices=("max", "0", "1", "2"), default="max")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gap-report", help="quantum vs best-classical success per k")
    p.add_argument("--k", type=int, nargs="+", default=[4, 13, 31])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_gap_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
