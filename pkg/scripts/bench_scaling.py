#!/usr/bin/env python3
"""Recourse and update time against n, through the CLI.

For every n this generates a churn stream (warm up to a fixed average degree,
then balanced inserts/deletes) and a forest stream, runs ``dynedgecolor run``
on each, and writes one CSV row per (workload, n, epsilon).  An epsilon sweep
at the smallest n follows.  Rows regenerate identically except the ns_* columns.

    python scripts/bench_scaling.py --out bench.csv
    python scripts/bench_scaling.py --sizes 1000 10000 --quick
"""

import argparse
import csv
import json
import subprocess
import sys
import tempfile
from pathlib import Path

COLUMNS = [
    "workload",
    "n",
    "epsilon",
    "delta",
    "updates",
    "mean_recourse",
    "ns_per_update",
    "ns_per_update_p50",
    "ns_per_update_p99",
    "max_recourse",
    "colors_used_peak",
    "failed_peak",
]


def cli(*args: str) -> str:
    cmd = [sys.executable, "-m", "dynedgecolor", *args]
    return subprocess.run(cmd, check=True, capture_output=True, text=True).stdout


def measure(workload: str, n: int, eps: float, delta: int, stream: Path, seed: int) -> dict:
    m = json.loads(cli("run", str(stream), "--epsilon", str(eps), "--seed", str(seed)))
    return {
        "workload": workload,
        "n": n,
        "epsilon": eps,
        "delta": delta,
        "updates": m["updates"],
        "mean_recourse": round(m["mean_recourse"], 6),
        "ns_per_update": round(m["timing"]["ns_per_update_mean"]),
        "ns_per_update_p50": round(m["timing"]["ns_per_update_p50"]),
        "ns_per_update_p99": round(m["timing"]["ns_per_update_p99"]),
        "max_recourse": m["max_recourse"],
        "colors_used_peak": m["colors_used_peak"],
        "failed_peak": m["failed_peak"],
    }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10**3, 10**4, 10**5])
    ap.add_argument("--epsilon", type=float, default=0.3)
    ap.add_argument("--sweep", type=float, nargs="*", default=[0.5, 0.3, 0.2])
    ap.add_argument("--delta", type=int, default=64)
    ap.add_argument("--avg-degree", type=int, default=8)
    ap.add_argument("--churn", type=int, default=20000, help="churn updates after warmup")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--quick", action="store_true", help="smaller churn phase, for smoke runs")
    ap.add_argument("--out", help="CSV path (default stdout)")
    args = ap.parse_args()
    churn = 2000 if args.quick else args.churn

    rows = []
    with tempfile.TemporaryDirectory() as tmp:

        def stream(kind: str, n: int) -> Path:
            path = Path(tmp) / f"{kind}-{n}.txt"
            if not path.exists():
                if kind == "churn":
                    extra = ["--count", str(churn), "--delete-fraction", "0.5", "--warmup", str(n * args.avg_degree // 2)]
                else:
                    extra = ["--count", str(n - 1)]
                cli("gen", kind, "--n", str(n), "--delta", str(args.delta), "--seed", str(args.seed), "--output", str(path), *extra)
            return path

        for n in args.sizes:
            for kind in ("churn", "forest"):
                rows.append(measure(kind, n, args.epsilon, args.delta, stream(kind, n), args.seed))
                print(rows[-1], file=sys.stderr)
        n0 = min(args.sizes)
        for eps in args.sweep:
            rows.append(measure("churn-sweep", n0, eps, args.delta, stream("churn", n0), args.seed))
            print(rows[-1], file=sys.stderr)

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(out, fieldnames=COLUMNS)
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
