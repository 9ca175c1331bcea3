import csv
import io
import json
import os
import subprocess
import sys

import pytest

from pctreap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_model_json(capsys):
    code, out, _ = run(capsys, "model", "--n", str(2**20), "--m", str(2**10), "--r", "100", "--p", "32")
    assert code == 0
    rec = json.loads(out)
    assert rec["sequential_cost"] == 1010
    assert rec["concurrent_op_cost"] == 8758
    assert rec["speedup"] == pytest.approx(3.690, abs=1e-3)


def test_model_csv_with_simulation(capsys):
    code, out, _ = run(capsys, "model", "--n", "1024", "--m", "16", "--r", "10", "--p", "4",
                       "--t", "400", "--simulate", "--seed", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert float(rows[0]["sim_measured_speedup"]) > 0
    assert rows[0]["sim_successes_per_process"] == "100 100 100 100"


def test_model_rejects_bad_params(capsys):
    code, out, err = run(capsys, "model", "--n", "100", "--m", "4", "--r", "10")
    assert code != 0 and out == "" and "power of two" in err


def test_bench_rows(capsys):
    code, out, _ = run(capsys, "bench", "--workload", "batch", "--threads", "1", "2",
                       "--prefill", "500", "--key-min", "0", "--key-max", "1000",
                       "--trials", "1", "--duration", "0.1", "--warmup", "0",
                       "--block-size", "50", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [d["threads"] for d in data] == [1, 2]
    assert all(d["workload"] == "batch" and d["prefill"] == 500 for d in data)


def test_bench_validation_error(capsys):
    code, out, err = run(capsys, "bench", "--workload", "random", "--prefill", "50",
                         "--key-min", "0", "--key-max", "10")
    assert code != 0 and out == "" and "prefill" in err


def test_argparse_errors_exit_nonzero():
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--workload", "nope"])
    assert exc.value.code != 0


def test_module_entry_point_and_pure_fallback():
    env = dict(os.environ, PCTREAP_PURE="1")
    proc = subprocess.run(
        [sys.executable, "-c", "import pctreap; print(pctreap.BACKEND)"],
        capture_output=True, text=True, env=env, check=True)
    assert proc.stdout.strip() == "python"
    proc = subprocess.run(
        [sys.executable, "-m", "pctreap", "model", "--n", "16", "--m", "4", "--r", "3", "--p", "2"],
        capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and json.loads(proc.stdout)["n"] == 16
