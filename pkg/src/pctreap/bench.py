"""Throughput workloads: the UC-wrapped treap against the bare sequential treap.

Two workloads, both starting from a prefilled set:

* ``batch``: every thread owns a disjoint block of keys outside the prefill
  range and loops "insert all of them, then remove all of them", so every
  update really modifies the tree. Threads stop only at cycle boundaries,
  which leaves the set equal to the prefill afterwards.
* ``random``: every thread flips a fair coin per operation between insert
  and remove of a uniform key from the key range.

Trials are duration based; throughput is completed operations per second.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import threading
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from . import persistent
from .persistent import Version
from .universal import ConcurrentSet

log = logging.getLogger(__name__)

REPORT_FIELDS = ("workload", "threads", "trials", "prefill", "baseline_ops_s", "uc_ops_s", "speedup")
_INT64_MAX = (1 << 63) - 1
_INT64_MIN = -(1 << 63)
_CHUNK = 4096
_U64 = (1 << 64) - 1
_WARMUP_TRIAL = 0xFFFFFFFF


@dataclass
class WorkloadConfig:
    workload: str
    threads: int = 1
    prefill: int = 10**6
    key_min: int = -10**6
    key_max: int = 10**6
    trials: int = 5
    duration: float = 3.0
    seed: int = 0
    block_size: int = 10**4
    warmup: float = 1.0
    # stop each thread after this many operations (still bounded by duration)
    ops_per_thread: Optional[int] = None

    def validate(self) -> None:
        if self.workload not in ("batch", "random"):
            raise ValueError(f"unknown workload {self.workload!r}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.prefill < 1:
            raise ValueError("prefill must be >= 1")
        if self.key_min > self.key_max:
            raise ValueError("empty key range")
        if self.key_min < _INT64_MIN or self.key_max > _INT64_MAX:
            raise ValueError("key range must fit in signed 64-bit integers")
        if self.prefill > self.key_max - self.key_min + 1:
            raise ValueError("prefill exceeds the number of keys in the range")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.duration > 0:
            raise ValueError("duration must be positive")
        if self.warmup < 0:
            raise ValueError("warmup must be >= 0")
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")
        if self.ops_per_thread is not None and self.ops_per_thread < 1:
            raise ValueError("ops_per_thread must be >= 1")
        if self.workload == "batch" and self.key_max + self.threads * self.block_size > _INT64_MAX:
            raise ValueError("batch key blocks overflow the 64-bit key space")


@dataclass
class BenchResult:
    config: WorkloadConfig
    baseline_throughput: float
    uc_throughput: float
    speedup: float
    baseline_trials: list[float]
    uc_trials: list[float]
    uc_ops_per_trial: list[int]
    attempts: Counter
    initial: Version = field(repr=False)
    final_snapshot: Version = field(repr=False)

    def row(self) -> dict:
        c = self.config
        return {
            "workload": c.workload,
            "threads": c.threads,
            "trials": c.trials,
            "prefill": c.prefill,
            "baseline_ops_s": self.baseline_throughput,
            "uc_ops_s": self.uc_throughput,
            "speedup": self.speedup,
        }


def prefill_keys(c: WorkloadConfig) -> np.ndarray:
    """Sorted, distinct prefill keys drawn uniformly from the key range."""
    rng = np.random.default_rng([c.seed & _U64, 0xF111])
    span = c.key_max - c.key_min + 1
    if span <= 4 * c.prefill:
        return np.sort(rng.choice(span, size=c.prefill, replace=False)) + c.key_min
    keys = np.unique(rng.integers(c.key_min, c.key_max, size=c.prefill, endpoint=True))
    while len(keys) < c.prefill:
        extra = rng.integers(c.key_min, c.key_max, size=c.prefill - len(keys), endpoint=True)
        keys = np.unique(np.concatenate([keys, extra]))
    return keys


def random_op_stream(seed: int, trial: int, thread: int, key_min: int, key_max: int) -> Iterator[tuple[bool, int]]:
    """Endless ``(is_insert, key)`` stream, reproducible from its arguments."""
    rng = np.random.default_rng([seed & _U64, trial, thread])
    while True:
        coins = rng.integers(0, 2, size=_CHUNK).tolist()
        keys = rng.integers(key_min, key_max, size=_CHUNK, endpoint=True).tolist()
        yield from zip(coins, keys)


def batch_block(c: WorkloadConfig, thread: int) -> list[int]:
    start = c.key_max + 1 + thread * c.block_size
    return list(range(start, start + c.block_size))


class _Stop:
    __slots__ = ("flag",)

    def __init__(self):
        self.flag = False


def _batch_worker(do_insert, do_remove, block, stop, limit):
    done = 0
    while True:
        for k in block:
            do_insert(k)
        for k in block:
            do_remove(k)
        done += 2 * len(block)
        if stop.flag or (limit is not None and done >= limit):
            return done


def _random_worker(do_insert, do_remove, stream, stop, limit):
    done = 0
    for is_insert, key in stream:
        if is_insert:
            do_insert(key)
        else:
            do_remove(key)
        done += 1
        if stop.flag or (limit is not None and done >= limit):
            return done
    return done


def _run_timed(workers, duration):
    """Start ``workers`` (callables returning an op count) together; stop after ``duration``."""
    stop = _Stop()
    n = len(workers)
    counts = [0] * n
    ends = [0.0] * n
    gate = threading.Barrier(n + 1)

    def body(i):
        gate.wait()
        counts[i] = workers[i](stop)
        ends[i] = time.perf_counter()

    threads = [threading.Thread(target=body, args=(i,), daemon=True) for i in range(n)]
    for t in threads:
        t.start()
    gate.wait()
    start = time.perf_counter()
    deadline = start + duration
    for t in threads:
        t.join(max(0.0, deadline - time.perf_counter()))
    stop.flag = True
    for t in threads:
        t.join()
    elapsed = max(ends) - start
    return counts, elapsed


def _make_workers(c: WorkloadConfig, trial: int, uc: Optional[ConcurrentSet], base: Version):
    """Build the thread bodies; ``uc=None`` gives the single-threaded baseline."""
    limit = c.ops_per_thread
    if uc is None:
        state = [base]

        def seq_insert(k):
            state[0] = persistent.insert(state[0], k)[0]

        def seq_remove(k):
            state[0] = persistent.remove(state[0], k)[0]

        if c.workload == "batch":
            block = batch_block(c, 0)
            return [lambda stop: _batch_worker(seq_insert, seq_remove, block, stop, limit)], state

        stream = random_op_stream(c.seed, trial, 0, c.key_min, c.key_max)
        return [lambda stop: _random_worker(seq_insert, seq_remove, stream, stop, limit)], state

    workers = []
    counters = []
    for i in range(c.threads):
        hist: Counter = Counter()
        counters.append(hist)

        def ins(k, hist=hist):
            hist[uc.insert(k).attempts] += 1

        def rem(k, hist=hist):
            hist[uc.remove(k).attempts] += 1

        if c.workload == "batch":
            block = batch_block(c, i)
            workers.append(lambda stop, ins=ins, rem=rem, block=block: _batch_worker(ins, rem, block, stop, limit))
        else:
            stream = random_op_stream(c.seed, trial, i, c.key_min, c.key_max)
            workers.append(lambda stop, ins=ins, rem=rem, s=stream: _random_worker(ins, rem, s, stop, limit))
    return workers, counters


def _run(c: WorkloadConfig) -> BenchResult:
    c.validate()
    initial = persistent.from_keys(prefill_keys(c).tolist())
    log.info("prefilled %d keys (height %d)", c.prefill, persistent.height(initial))

    if c.warmup > 0:
        w, _ = _make_workers(c, _WARMUP_TRIAL, None, initial)
        _run_timed(w, c.warmup)
        w, _ = _make_workers(c, _WARMUP_TRIAL, ConcurrentSet(initial), initial)
        _run_timed(w, c.warmup)

    base_tp, uc_tp, uc_ops = [], [], []
    attempts: Counter = Counter()
    final = initial
    for trial in range(c.trials):
        w, _ = _make_workers(c, trial, None, initial)
        counts, elapsed = _run_timed(w, c.duration)
        base_tp.append(sum(counts) / elapsed)

        uc = ConcurrentSet(initial)
        w, hists = _make_workers(c, trial, uc, initial)
        counts, elapsed = _run_timed(w, c.duration)
        total = sum(counts)
        for h in hists:
            attempts.update(h)
        if sum(sum(h.values()) for h in hists) != total:
            raise RuntimeError("operation accounting mismatch")
        uc_ops.append(total)
        uc_tp.append(total / elapsed)
        final = uc.snapshot()
        log.info("trial %d: baseline %.0f ops/s, uc %.0f ops/s", trial, base_tp[-1], uc_tp[-1])

    baseline = sum(base_tp) / len(base_tp)
    uc_mean = sum(uc_tp) / len(uc_tp)
    return BenchResult(
        config=c,
        baseline_throughput=baseline,
        uc_throughput=uc_mean,
        speedup=uc_mean / baseline,
        baseline_trials=base_tp,
        uc_trials=uc_tp,
        uc_ops_per_trial=uc_ops,
        attempts=attempts,
        initial=initial,
        final_snapshot=final,
    )


def run_batch_workload(c: WorkloadConfig) -> BenchResult:
    if c.workload != "batch":
        raise ValueError("run_batch_workload needs workload='batch'")
    return _run(c)


def run_random_workload(c: WorkloadConfig) -> BenchResult:
    if c.workload != "random":
        raise ValueError("run_random_workload needs workload='random'")
    return _run(c)


def run_workload(c: WorkloadConfig) -> BenchResult:
    return run_batch_workload(c) if c.workload == "batch" else run_random_workload(c)


def report(results: list[BenchResult], format: str = "csv") -> str:
    if not results:
        raise ValueError("no results to report")
    rows = [r.row() for r in results]
    if format == "json":
        return json.dumps(rows, indent=2)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=REPORT_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    raise ValueError(f"unknown format {format!r}")
