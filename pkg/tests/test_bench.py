import csv
import io
import itertools
import json

import pytest

from pctreap import persistent as P
from pctreap.bench import (
    REPORT_FIELDS,
    WorkloadConfig,
    batch_block,
    prefill_keys,
    random_op_stream,
    report,
    run_batch_workload,
    run_random_workload,
)


def small(workload, **kw):
    base = dict(workload=workload, threads=1, prefill=2000, key_min=-5000, key_max=5000,
                trials=1, duration=0.2, warmup=0, block_size=300)
    base.update(kw)
    return WorkloadConfig(**base)


@pytest.mark.parametrize("kw", [
    dict(workload="mixed"), dict(threads=0), dict(prefill=0), dict(key_min=5, key_max=4),
    dict(trials=0), dict(duration=0), dict(block_size=0), dict(prefill=20000),
    dict(warmup=-1), dict(ops_per_thread=0), dict(key_max=(1 << 63) - 1),
])
def test_config_validation(kw):
    cfg = small("batch")
    for k, v in kw.items():
        setattr(cfg, k, v)
    with pytest.raises(ValueError):
        cfg.validate()


def test_runner_checks_workload_kind():
    with pytest.raises(ValueError):
        run_batch_workload(small("random"))
    with pytest.raises(ValueError):
        run_random_workload(small("batch"))


def test_prefill_keys_distinct_in_range():
    for span_kw in (dict(key_min=0, key_max=2500), dict(key_min=-10**12, key_max=10**12)):
        cfg = small("random", **span_kw)
        keys = prefill_keys(cfg)
        assert len(keys) == cfg.prefill == len(set(keys.tolist()))
        assert keys.min() >= cfg.key_min and keys.max() <= cfg.key_max
        assert (prefill_keys(cfg) == keys).all()


def test_batch_blocks_disjoint_and_outside_range():
    cfg = small("batch", threads=4)
    blocks = [set(batch_block(cfg, i)) for i in range(4)]
    assert all(len(b) == cfg.block_size for b in blocks)
    assert all(not (a & b) for a, b in itertools.combinations(blocks, 2))
    assert min(min(b) for b in blocks) > cfg.key_max


def test_batch_single_thread_never_retries():
    r = run_batch_workload(small("batch", trials=2))
    assert set(r.attempts) == {1}
    assert len(r.uc_trials) == len(r.baseline_trials) == 2
    assert sum(r.attempts.values()) == sum(r.uc_ops_per_trial)
    assert r.speedup == pytest.approx(r.uc_throughput / r.baseline_throughput)


def test_batch_ends_at_prefill(fast_switching):
    r = run_batch_workload(small("batch", threads=4))
    assert P.to_sorted_list(r.final_snapshot) == prefill_keys(r.config).tolist()
    assert sum(r.attempts.values()) == sum(r.uc_ops_per_trial)
    assert all(n % (2 * r.config.block_size) == 0 for n in r.uc_ops_per_trial)


def test_batch_attempts_grow_with_threads(fast_switching):
    def mean_attempts(threads):
        r = run_batch_workload(small("batch", threads=threads, duration=0.3))
        return sum(k * v for k, v in r.attempts.items()) / sum(r.attempts.values())

    assert mean_attempts(1) == 1.0
    assert mean_attempts(4) > 1.0


def test_random_degenerate_range():
    r = run_random_workload(small("random", prefill=1, key_min=0, key_max=0, threads=2))
    assert P.to_sorted_list(r.initial) == [0]
    assert P.to_sorted_list(r.final_snapshot) in ([], [0])


def test_random_stream_reproducible():
    a = list(itertools.islice(random_op_stream(7, 0, 1, -10, 10), 10000))
    b = list(itertools.islice(random_op_stream(7, 0, 1, -10, 10), 10000))
    c = list(itertools.islice(random_op_stream(7, 0, 2, -10, 10), 10000))
    assert a == b and a != c
    assert all(-10 <= k <= 10 for _, k in a)
    assert 0.45 < sum(ins for ins, _ in a) / len(a) < 0.55


def test_random_seeded_runs_identical():
    cfg = dict(ops_per_thread=5000, duration=60, seed=42)
    a = run_random_workload(small("random", **cfg))
    b = run_random_workload(small("random", **cfg))
    assert a.uc_ops_per_trial == b.uc_ops_per_trial == [5000]
    assert P.to_sorted_list(a.final_snapshot) == P.to_sorted_list(b.final_snapshot)
    # replay the stream on the bare treap: same final contents
    v = a.initial
    for is_insert, k in itertools.islice(random_op_stream(42, 0, 0, -5000, 5000), 5000):
        v, _ = (P.insert if is_insert else P.remove)(v, k)
    assert P.to_sorted_list(v) == P.to_sorted_list(a.final_snapshot)


def test_warmup_runs():
    r = run_random_workload(small("random", warmup=0.05, duration=0.1))
    assert r.uc_throughput > 0 and r.baseline_throughput > 0


def fake_results(threads_list):
    r = run_batch_workload(small("batch", duration=0.05))
    out = []
    for t in threads_list:
        cfg = small("batch", threads=t)
        out.append(type(r)(cfg, 1000.5, 1500.25, 1.4995, [1000.5], [1500.25], [10], r.attempts,
                           r.initial, r.final_snapshot))
    return out


def test_report_csv():
    text = report(fake_results([1]), "csv")
    lines = text.splitlines()
    assert lines[0] == "workload,threads,trials,prefill,baseline_ops_s,uc_ops_s,speedup"
    assert lines[1] == "batch,1,1,2000,1000.5,1500.25,1.4995"


def test_report_sweep_keeps_order():
    rows = list(csv.DictReader(io.StringIO(report(fake_results([1, 4, 10, 17]), "csv"))))
    assert [int(r["threads"]) for r in rows] == [1, 4, 10, 17]


def test_report_json():
    data = json.loads(report(fake_results([1, 4]), "json"))
    assert [tuple(d) for d in data] == [REPORT_FIELDS] * 2
    assert data[1]["threads"] == 4 and data[0]["uc_ops_s"] == 1500.25


def test_report_errors():
    with pytest.raises(ValueError):
        report([], "csv")
    with pytest.raises(ValueError):
        report(fake_results([1]), "xml")
