#!/usr/bin/env python3
"""Times the compiled counting kernel against the pure-Python fallback.

Runs each workload in two subprocesses (one with TRITGAME_PURE_PYTHON=1)
and prints a side-by-side table.  Workloads cover the raw ring operations
and the collapsed evaluator paths that dominate the strategy search.
"""

import argparse
import json
import os
import subprocess
import sys
import time


def run_workloads(repeats: int) -> dict:
    from tritgame.classical import (
        StrategyProfile,
        best_homogeneous,
        canonical_division,
        evaluate_collapsed,
    )
    from tritgame.kernel import IMPLEMENTATION, fold_counts, ring_mul

    results = {"implementation": IMPLEMENTATION}

    # Raw ring operations on fully dense vectors with ~190-bit entries.
    a = [(7**40 + i) for i in range(27)]
    b = [(11**35 + 3 * i) for i in range(27)]
    t0 = time.perf_counter()
    for _ in range(2000 * repeats):
        ring_mul(a, b)
        fold_counts(a, b)
    results["ring_ops_2k_pairs_s"] = time.perf_counter() - t0

    profile = StrategyProfile.homogeneous(canonical_division("A"), 100)
    t0 = time.perf_counter()
    for _ in range(repeats):
        evaluate_collapsed(profile)
    results["collapsed_A_k100_s"] = (time.perf_counter() - t0) / repeats

    t0 = time.perf_counter()
    best_homogeneous(31)
    results["search_k31_s"] = time.perf_counter() - t0

    return results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(run_workloads(args.repeats)))
        return 0

    rows = {}
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("TRITGAME_PURE_PYTHON", None)
        if pure:
            env["TRITGAME_PURE_PYTHON"] = "1"
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker",
             "--repeats", str(args.repeats)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        data = json.loads(out.stdout)
        rows[data.pop("implementation")] = data

    if "cython" not in rows:
        print("note: compiled kernel unavailable; showing fallback only")
    names = sorted(next(iter(rows.values())))
    width = max(len(n) for n in names) + 2
    header = f"{'workload':<{width}}" + "".join(f"{impl:>12}" for impl in rows)
    if len(rows) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name in names:
        line = f"{name:<{width}}" + "".join(f"{rows[impl][name]:>12.4f}" for impl in rows)
        if len(rows) == 2:
            vals = [rows[impl][name] for impl in rows]
            line += f"{max(vals) / min(vals):>9.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
