"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/compare_backends.py [--size 100000] [--repeat 3]

Kernel rows call each backend module directly; the last row runs the whole
``model --simulate`` CLI in a subprocess per backend via ``PCTREAP_PURE``.
"""
import argparse
import os
import random
import subprocess
import sys
import time

import numpy as np

from pctreap import _pysim, _pytreap

try:
    from pctreap import _csim, _ctreap
except ImportError:
    sys.exit("compiled kernels not built; run `pip install -e . --no-build-isolation` first")


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def treap_cases(size):
    rng = random.Random(0)
    keys = rng.sample(range(-10 * size, 10 * size), size)
    sorted_keys = sorted(keys)
    probes = [rng.randrange(-10 * size, 10 * size) for _ in range(size)]

    def inserts(k):
        def run():
            root = None
            for key in keys:
                root, _ = k.insert(root, key)
        return run

    def churn(k):
        base = k.build_sorted(sorted_keys)

        def run():
            root = base
            for key in probes:
                root, changed = k.insert(root, key)
                if not changed:
                    root, _ = k.remove(root, key)
        return run

    def lookups(k):
        base = k.build_sorted(sorted_keys)
        return lambda: [k.contains(base, key) for key in probes]

    return [
        (f"insert {size} keys one by one", inserts),
        (f"bulk build {size} sorted keys", lambda k: lambda: k.build_sorted(sorted_keys)),
        (f"{size} insert/remove on {size}-key treap", churn),
        (f"{size} lookups", lookups),
    ]


def sim_case(log_n, log_m, procs, ops):
    keys = np.random.default_rng(1).integers(0, 2**log_n, ops + procs).tolist()
    label = f"simulate N=2^{log_n} M=2^{log_m} P={procs} T={ops}"
    return label, lambda s: lambda: s.run_phase(keys, log_n, procs, max(2**log_m, log_n + 1), 100.0, ops)


def cli_model(pure):
    env = dict(os.environ, PCTREAP_PURE="1" if pure else "0")
    cmd = [sys.executable, "-m", "pctreap", "model", "--n", str(2**16), "--m", "256", "--r", "100",
           "--p", "16", "--t", "10000", "--simulate"]
    return lambda: subprocess.run(cmd, env=env, check=True, capture_output=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--size", type=int, default=100000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rows = []
    for label, make in treap_cases(args.size):
        rows.append((label, best_of(args.repeat, make(_pytreap)), best_of(args.repeat, make(_ctreap))))
    label, make = sim_case(16, 8, 16, 10**4)
    rows.append((label, best_of(args.repeat, make(_pysim)), best_of(args.repeat, make(_csim))))
    rows.append(("CLI model --simulate (end to end)", best_of(1, cli_model(True)), best_of(1, cli_model(False))))

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'python s':>9}  {'cython s':>9}  {'ratio':>6}")
    for label, py, cy in rows:
        print(f"{label:<{width}}  {py:9.3f}  {cy:9.3f}  {py / cy:5.1f}x")


if __name__ == "__main__":
    main()
