"""Command line: ``pctreap bench ...`` and ``pctreap model ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict

from . import _backend
from .bench import WorkloadConfig, report, run_workload
from .cache_model import (
    ModelParams,
    analytic_concurrent_op_cost,
    analytic_sequential_cost,
    analytic_speedup,
    simulate,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pctreap", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run a throughput workload against the sequential baseline")
    b.add_argument("--workload", choices=("batch", "random"), required=True)
    b.add_argument("--threads", type=int, nargs="+", default=[1], metavar="K",
                   help="one or more thread counts; one output row each")
    b.add_argument("--prefill", type=int, default=10**6)
    b.add_argument("--key-min", type=int, default=-10**6)
    b.add_argument("--key-max", type=int, default=10**6)
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--duration", type=float, default=3.0, help="seconds per trial")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--block-size", type=int, default=10**4, help="keys per thread in the batch workload")
    b.add_argument("--warmup", type=float, default=1.0, help="untimed warmup seconds per configuration")
    b.add_argument("--format", choices=("csv", "json"), default="csv")

    m = sub.add_parser("model", help="evaluate the private-cache cost model")
    m.add_argument("--n", type=int, required=True, help="tree size (power of two)")
    m.add_argument("--m", type=int, required=True, help="cache capacity in nodes (power of two)")
    m.add_argument("--r", type=float, required=True, help="uncached load cost")
    m.add_argument("--p", type=int, default=1, help="process count")
    m.add_argument("--t", type=int, default=1, help="operation count")
    m.add_argument("--simulate", action="store_true", help="also run the discrete simulator")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--format", choices=("csv", "json"), default="json")
    return parser


def _bench(args) -> str:
    results = []
    for k in args.threads:
        cfg = WorkloadConfig(
            workload=args.workload, threads=k, prefill=args.prefill,
            key_min=args.key_min, key_max=args.key_max, trials=args.trials,
            duration=args.duration, seed=args.seed, block_size=args.block_size,
            warmup=args.warmup,
        )
        cfg.validate()
        results.append(cfg)
    return report([run_workload(cfg) for cfg in results], args.format)


def model_record(p: ModelParams, simulate_seed: int | None = None) -> dict:
    rec = {
        "n": p.n, "m": p.m, "r": p.r, "p": p.p, "t": p.t,
        "sequential_cost": analytic_sequential_cost(p),
        "concurrent_op_cost": analytic_concurrent_op_cost(p),
        "speedup": analytic_speedup(p) if p.m < p.n else None,
    }
    if simulate_seed is not None:
        stats = asdict(simulate(p, simulate_seed))
        stats["successes_per_process"] = " ".join(map(str, stats["successes_per_process"]))
        rec.update({f"sim_{k}": v for k, v in stats.items()})
    return rec


def _model(args) -> str:
    p = ModelParams(n=args.n, m=args.m, r=args.r, p=args.p, t=args.t)
    rec = model_record(p, args.seed if args.simulate else None)
    if args.format == "json":
        return json.dumps(rec)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rec), lineterminator="\n")
    writer.writeheader()
    writer.writerow(rec)
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger(__name__).info("kernel backend: %s", _backend.NAME)
    try:
        out = _bench(args) if args.command == "bench" else _model(args)
    except ValueError as exc:
        print(f"pctreap: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0
