"""Cost model for path-copying updates under private per-process caches.

Closed forms for the sequential cost, the per-operation concurrent cost and
their ratio, plus a seeded discrete simulator that measures the same
quantities on an idealized external, perfectly balanced tree.

Model symbols: ``n`` keys, ``m`` cache capacity in nodes, ``r`` cost of an
uncached load (a cached load costs 1), ``p`` processes, ``t`` operations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import sim as _sim


def _is_pow2(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


@dataclass(frozen=True)
class ModelParams:
    n: int
    m: int
    r: float
    p: int = 1
    t: int = 1

    def __post_init__(self):
        if not (_is_pow2(self.n) and self.n >= 2):
            raise ValueError(f"n must be a power of two >= 2, got {self.n}")
        if not _is_pow2(self.m):
            raise ValueError(f"m must be a positive power of two, got {self.m}")
        if self.m > self.n:
            raise ValueError(f"cache size m={self.m} exceeds tree size n={self.n}")
        if not self.r >= 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.p < 1 or self.t < 1:
            raise ValueError("p and t must be >= 1")

    @property
    def log_n(self) -> int:
        return self.n.bit_length() - 1

    @property
    def log_m(self) -> int:
        return self.m.bit_length() - 1


def _require_proper_cache(p: ModelParams) -> None:
    if p.m >= p.n:
        raise ValueError(f"m must be smaller than n (m={p.m}, n={p.n})")


def expected_modified_on_path(depth: int) -> float:
    """Expected number of nodes on a random path rewritten by one random update.

    Direct sum of ``k / 2**k`` for ``k = 1..depth``; tends to 2.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return math.fsum(k / 2**k for k in range(1, depth + 1))


def analytic_sequential_cost(p: ModelParams) -> float:
    return p.t * (p.log_m + p.r * (p.log_n - p.log_m))


def analytic_concurrent_op_cost(p: ModelParams) -> float:
    """Cost of one operation: a cold first try plus ``p - 1`` warm retries."""
    return p.r * p.log_n + (p.p - 1) * (2 * p.r + p.log_n - 2)


def analytic_speedup(p: ModelParams) -> float:
    _require_proper_cache(p)
    seq = p.log_m + p.r * (p.log_n - p.log_m)
    return p.p * seq / analytic_concurrent_op_cost(p)


@dataclass
class SimStats:
    sequential_time: float
    concurrent_time: float
    measured_speedup: float
    avg_modified_on_path: float
    avg_uncached_loads_retry: float
    successes_per_process: list[int]
    sequential_cache: int
    concurrent_cache: int
    # cached node loads per sequential operation (the closed form assumes log2 m)
    sequential_hits_per_op: float
    retries: int = field(default=0)


def simulate(p: ModelParams, seed: int = 0) -> SimStats:
    """Run the sequential and the concurrent phase on the same key stream.

    Both phases charge 1 for the root register read, 1 per cached node load
    and ``r`` per uncached one. In the concurrent phase every process retries
    once per round on the version left by the previous round's winner, and
    wins rotate round-robin. Caches are LRU; the concurrent caches hold at
    least one full path.
    """
    _require_proper_cache(p)
    levels = p.log_n
    keys = np.random.default_rng(seed & (1 << 64) - 1).integers(0, p.n, size=p.t + p.p).tolist()
    conc_cache = max(p.m, levels + 1)

    seq_clocks, *_ = _sim.run_phase(keys, levels, 1, p.m, float(p.r), p.t)
    clocks, successes, retries, modified, uncached = _sim.run_phase(
        keys, levels, p.p, conc_cache, float(p.r), p.t)

    seq_time = seq_clocks[0]
    conc_time = max(clocks)
    # seq_time = t * (1 + hits + r * (levels - hits))
    per_op = seq_time / p.t - 1
    hits = (p.r * levels - per_op) / (p.r - 1) if p.r > 1 else float(levels)
    return SimStats(
        sequential_time=seq_time,
        concurrent_time=conc_time,
        measured_speedup=seq_time / conc_time,
        avg_modified_on_path=modified / retries if retries else 0.0,
        avg_uncached_loads_retry=uncached / retries if retries else 0.0,
        successes_per_process=list(successes),
        sequential_cache=p.m,
        concurrent_cache=conc_cache,
        sequential_hits_per_op=hits,
        retries=retries,
    )
