"""Command-line harness: ``gen``, ``run``, ``static``, ``verify``.

Exit codes: 0 success, 1 bad input (arguments or stream file), 2 an
invariant or oracle check failed.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .checks import IncrementalChecker, check_engine
from .engine import Engine, static_color
from .errors import ColoringError, InvalidEpsilon, OracleMismatch, StreamParseError
from .graph import DynGraph
from .oracle import verify_proper
from .randomness import derive_params
from .runner import run_stream
from .streams import GENERATORS, InvalidArgs, format_stream, parse_stream

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2


def trial_seed(seed: int, k: int) -> int:
    if k == 0:
        return seed
    h = hashlib.blake2b(f"{seed}:{k}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "little")


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        else:
            out[key] = v
    return out


def _emit(records: list[dict], fmt: str, output: Optional[str]) -> None:
    if fmt == "csv":
        rows = [_flatten(r) for r in records]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(records[0] if len(records) == 1 else records, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_one(stream, args, seed: int) -> dict:
    _, metrics = run_stream(
        stream,
        args.epsilon,
        seed=seed,
        oracle_check=args.oracle_check,
        full_check_every=getattr(args, "full_check_every", 0),
        resample_every=args.resample_every,
        resample_threshold=args.resample_threshold,
        greedy_slack=args.greedy_slack,
    )
    return metrics.as_dict()


def cmd_gen(args) -> int:
    gen = GENERATORS[args.kind]
    kw = {}
    if args.kind == "churn":
        kw = {"delete_fraction": args.delete_fraction, "warmup": args.warmup}
    stream = gen(args.n, args.delta, args.count, seed=args.seed, **kw)
    text = f"# gen {args.kind} n={args.n} delta={args.delta} count={args.count} seed={args.seed}\n"
    text += format_stream(stream)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_run(args) -> int:
    stream = parse_stream(args.stream)
    seeds = [trial_seed(args.seed, k) for k in range(args.trials)]
    if args.trials > 1 and args.jobs != 1:
        with ProcessPoolExecutor(max_workers=args.jobs or None) as pool:
            records = list(pool.map(_run_one, [stream] * len(seeds), [args] * len(seeds), seeds))
    else:
        records = [_run_one(stream, args, s) for s in seeds]
    _emit(records, args.format, args.output)
    return EXIT_OK


def cmd_static(args) -> int:
    stream = parse_stream(args.stream)
    params = derive_params(args.epsilon, stream.delta)
    g = DynGraph.from_edges(stream.n, stream.final_edges() if args.final else stream.insertions(), stream.delta)
    res = static_color(g, params, seed=args.seed)
    bad = verify_proper(res.coloring, g.edges())
    record = {
        "edges": g.num_edges(),
        "max_degree": g.max_degree(),
        "colors_used": res.colors_used,
        "failed": res.failed,
        "h_max_degree": res.h_max_degree,
        "color_bound": res.bound,
        "bound_ratio": res.colors_used / res.bound if res.bound else 0.0,
        "colors_per_delta": res.colors_used / stream.delta,
        "proper": not bad,
        "seed": args.seed,
        "params": params.as_dict(),
    }
    _emit([record], args.format, args.output)
    if bad:
        print(f"coloring not proper: {bad[:5]}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_verify(args) -> int:
    stream = parse_stream(args.stream)
    params = derive_params(args.epsilon, stream.delta, args.greedy_slack)
    eng = Engine(stream.n, params, seed=args.seed)
    checker = IncrementalChecker(eng, full_every=1, audit=True)
    for k, (op, u, v) in enumerate(stream.updates, 1):
        checker.before()
        rep = eng.apply_update(op, u, v)
        try:
            checker.after(rep.edge)
        except OracleMismatch as exc:
            exc.diagnostics.update(update_index=k, seed=args.seed, update=f"{op} {u} {v}")
            raise
    check_engine(eng)
    report = {"stream": args.stream, "updates": len(stream), "checks": checker.checked, "result": "pass", "seed": args.seed}
    _emit([report], args.format, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dynedgecolor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, stream=True):
        if stream:
            sp.add_argument("stream", help="stream file ('n <n> delta <d>' header, then '+ u v' / '- u v')")
        sp.add_argument("--epsilon", type=float, default=0.3)
        sp.add_argument("--seed", type=int, default=0, help="64-bit seed; fixes every random choice")
        sp.add_argument("--output", help="write results here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    g = sub.add_parser("gen", help="generate a synthetic update stream")
    g.add_argument("kind", choices=sorted(GENERATORS))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--delta", type=int, required=True)
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--delete-fraction", type=float, default=0.3)
    g.add_argument("--warmup", type=int, default=0, help="churn only: leading insertions")
    g.add_argument("--output")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run the dynamic engine over a stream")
    common(r)
    r.add_argument("--oracle-check", type=int, default=0, metavar="K", help="verify against the oracle every K updates")
    r.add_argument("--full-check-every", type=int, default=0, metavar="M", help="with --oracle-check, run the full battery every M checks")
    r.add_argument("--resample-every", type=int, default=None, metavar="N")
    r.add_argument("--resample-threshold", type=float, default=None, metavar="X", help="resample when max degree of H exceeds X*eps*delta (the analysis uses 19)")
    r.add_argument("--greedy-slack", type=float, default=1.0)
    r.add_argument("--trials", type=int, default=1)
    r.add_argument("--jobs", type=int, default=0, help="parallel workers for --trials (0 = all cores)")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("static", help="one-shot coloring of the stream's graph")
    common(s)
    s.add_argument("--final", action="store_true", help="color the final live graph instead of all insertions")
    s.set_defaults(func=cmd_static)

    v = sub.add_parser("verify", help="run with every invariant checked after every update")
    common(v)
    v.add_argument("--greedy-slack", type=float, default=1.0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    warnings.simplefilter("ignore", UserWarning)
    try:
        return args.func(args)
    except (StreamParseError, InvalidArgs, InvalidEpsilon, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        print(json.dumps(exc.diagnostics, indent=2, default=str, sort_keys=True), file=sys.stderr)
        return EXIT_CHECK
    except ColoringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
