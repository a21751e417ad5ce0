"""End-to-end CLI behaviour, including exit codes."""

import json
import subprocess
import sys
from fractions import Fraction as F

from witskit import make_instance
from witskit.serialize import canonical_dumps, instance_to_json


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "witskit", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


def uniform(values):
    p = F(1, len(values))
    return [(v, p) for v in values]


def write_instance(path, inst):
    path.write_text(canonical_dumps(instance_to_json(inst)))


def test_sidon_command():
    proc = run_cli("sidon", "--k", "3")
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == ["1", "21", "5121"]


def test_sidon_rejects_other_orders():
    proc = run_cli("sidon", "--k", "2", "--order", "2")
    assert proc.returncode == 2


def test_reduce_writes_instance_and_sidecar(tmp_path):
    graph_file = tmp_path / "k2.col"
    graph_file.write_text("p edge 2 1\ne 1 2\n")
    out = tmp_path / "inst.json"
    proc = run_cli("reduce", "--graph", str(graph_file), "--output", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["k"] == {"num": "33", "den": "1"}
    sidecar = json.loads((tmp_path / "inst.json.sidecar.json").read_text())
    assert sidecar["scale"] == "16"
    assert sidecar["x_values"] == ["16", "336"]
    assert sidecar["sidon_base"] == ["1", "21"]


def test_reduce_to_stdout_combined(tmp_path):
    graph_file = tmp_path / "k2.col"
    graph_file.write_text("p edge 2 1\ne 1 2\n")
    proc = run_cli("reduce", "--graph", str(graph_file))
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert set(doc) == {"instance", "sidecar"}


def test_l2chrom_command(tmp_path):
    graph_file = tmp_path / "k3.col"
    graph_file.write_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    proc = run_cli("l2chrom", "--graph", str(graph_file))
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["gamma_star"] == {"num": "2", "den": "3"}
    assert doc["witness"] == [-1, 0, 1]


def test_solve_eval_round_trip(tmp_path):
    inst = make_instance(uniform([0, 1]), uniform([0, 1]), 100)
    inst_file = tmp_path / "inst.json"
    write_instance(inst_file, inst)

    proc = run_cli("solve-exact", "--instance", str(inst_file))
    assert proc.returncode == 0
    solved = json.loads(proc.stdout)
    assert solved["cost"]["total"] == {"num": "1", "den": "2", "approx": 0.5}

    strategy_file = tmp_path / "strategy.json"
    strategy_file.write_text(canonical_dumps(solved["strategy"]))
    evaluated = run_cli("eval", "--instance", str(inst_file), "--strategy", str(strategy_file))
    assert evaluated.returncode == 0
    assert json.loads(evaluated.stdout)["total"] == solved["cost"]["total"]


def test_solve_approx_per_k_table(tmp_path):
    inst = make_instance(uniform([0, 1]), uniform([0, 1]), 100)
    inst_file = tmp_path / "inst.json"
    write_instance(inst_file, inst)
    out = tmp_path / "approx.json"
    proc = run_cli(
        "solve-approx", "--instance", str(inst_file), "--emit-per-k", "--output", str(out)
    )
    assert proc.returncode == 0
    assert json.loads(out.read_text())["best_k"] == 1
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "k,total_num,total_den"
    assert lines[1:] == ["0,1,2", "1,1,2", "2,25,1"]


def test_input_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    proc = run_cli("solve-approx", "--instance", str(bad))
    assert proc.returncode == 2
    assert "error:" in proc.stderr
    missing = run_cli("l2chrom", "--graph", str(tmp_path / "nope.col"))
    assert missing.returncode == 2


def test_budget_exit_code(tmp_path):
    inst = make_instance(uniform([0, 1, 2]), uniform([0, 1]), 100)
    inst_file = tmp_path / "inst.json"
    write_instance(inst_file, inst)
    proc = run_cli("solve-exact", "--instance", str(inst_file), "--budget", "2")
    assert proc.returncode == 3


def test_verify_sidon_records():
    proc = run_cli("verify", "sidon", "--max-k", "4")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["summary"] == {"records": 4, "passed": 4, "failed": 0, "skipped": 0}


def test_verify_table_format():
    proc = run_cli("verify", "sidon", "--max-k", "2", "--format", "table")
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("CHECK")
    assert "2 checks, 2 passed" in proc.stdout


def test_bench_csv(tmp_path):
    config = tmp_path / "bench.json"
    config.write_text(
        json.dumps(
            {
                "seed": 3,
                "families": [
                    {"name": "tiny", "n": 3, "z_size": 2, "trials": 4, "probs": "uniform"}
                ],
            }
        )
    )
    proc = run_cli("bench", "--config", str(config))
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "instance_id,n,z_size,k,approx_cost,exact_cost,ratio,wall_time_ms"
    assert len(lines) == 5
    assert lines[1].startswith("tiny-000,3,2,")


def test_bench_empty_family_header_only(tmp_path):
    config = tmp_path / "bench.json"
    config.write_text(json.dumps({"families": []}))
    proc = run_cli("bench", "--config", str(config))
    assert proc.returncode == 0
    assert proc.stdout.strip() == "instance_id,n,z_size,k,approx_cost,exact_cost,ratio,wall_time_ms"


def test_bench_rejects_bad_config(tmp_path):
    config = tmp_path / "bench.json"
    config.write_text(json.dumps({"families": [{"n": 3}]}))
    proc = run_cli("bench", "--config", str(config))
    assert proc.returncode == 2
