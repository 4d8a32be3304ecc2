import json
import subprocess
import sys

import pytest

from dynbc.cli import main

EDGES = "% toy graph\n1 2\n2 3\n3 4\n4 1\n4 5\n"


@pytest.fixture
def graph_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(EDGES)
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_exact_tsv(capsys, graph_file):
    code, out, _ = run(capsys, "exact", "--input", graph_file)
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert [int(r[0]) for r in rows] == [1, 2, 3, 4, 5]
    # node 4 is the only way to 5
    assert float(rows[3][1]) == max(float(r[1]) for r in rows)
    assert float(rows[4][1]) == 0.0


def test_exact_json(capsys, graph_file):
    code, out, _ = run(capsys, "exact", "--input", graph_file, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [d["node"] for d in data] == [1, 2, 3, 4, 5]


def test_init_then_update(capsys, tmp_path, graph_file):
    state = tmp_path / "s.json"
    code, out1, _ = run(capsys, "init", "--input", graph_file, "--state", state, "--epsilon", "0.2", "--seed", "4")
    assert code == 0 and state.exists()
    batch = tmp_path / "b.txt"
    batch.write_text("D 4 5\nI 2 4\n")
    code, out2, _ = run(capsys, "update", "--state", state, "--batch", batch)
    assert code == 0
    scores = {int(a): float(b) for a, b in (line.split("\t") for line in out2.splitlines())}
    assert scores[5] == 0.0 and len(scores) == 5


def test_output_is_byte_identical_per_seed(capsys, tmp_path, graph_file):
    outs = []
    for i in range(2):
        target = tmp_path / f"o{i}.tsv"
        assert run(capsys, "init", "--input", graph_file, "--seed", "9", "--output", target)[0] == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


def test_vd(capsys, tmp_path, graph_file):
    code, out, _ = run(capsys, "vd", "--input", graph_file)
    assert code == 0
    assert len(out.splitlines()) == 1
    batch = tmp_path / "b.txt"
    batch.write_text("D 4 5\n")
    code, out, _ = run(capsys, "vd", "--input", graph_file, "--batch", batch)
    assert len(out.splitlines()) == 2


def test_gen_writes_replayable_batches(capsys, tmp_path, graph_file):
    outdir = tmp_path / "gen"
    code, _, _ = run(capsys, "gen", "--input", graph_file, "--mode", "random", "--x", 2, "--batch-size", 1,
                     "--output", outdir, "--seed", 1)
    assert code == 0
    batches = sorted(outdir.glob("batch_*.txt"))
    assert len(batches) == 2
    state = tmp_path / "s.json"
    assert run(capsys, "init", "--input", outdir / "base.txt", "--state", state, "--epsilon", "0.3")[0] == 0
    argv = ["update", "--state", state]
    for b in batches:
        argv += ["--batch", b]
    assert run(capsys, *argv)[0] == 0


def test_gen_real_dynamics(capsys, tmp_path):
    src = tmp_path / "t.txt"
    src.write_text("1 2 1 3\n2 3 1 1\n3 1 1 2\n")
    outdir = tmp_path / "gen"
    assert run(capsys, "gen", "--input", src, "--mode", "real", "--x", 1, "--output", outdir)[0] == 0
    assert (outdir / "batch_0001.txt").read_text() == "I 1 2 1.0\n"


def test_bench_schema(capsys, tmp_path):
    code, out, _ = run(capsys, "bench", "--synthetic-n", 300, "--synthetic-degree", 6, "--runs", 2,
                       "--epsilon", "0.3", "--format", "json", "--batch-size", "1,2")
    assert code == 0
    report = json.loads(out)
    assert [row["batch_size"] for row in report["rows"]] == [1, 2]
    for row in report["rows"]:
        assert {"runs", "t_dynamic_mean", "t_static_mean", "speedup", "r"} <= set(row)
        assert row["runs"] == 2


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n1 x\n")
    code, _, err = run(capsys, "exact", "--input", bad)
    assert code == 2
    assert "line 2" in err


def test_missing_file_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "exact", "--input", tmp_path / "nope.txt")
    assert code == 2 and "nope.txt" in err


def test_domain_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "w.txt"
    bad.write_text("1 2 -3\n")
    assert run(capsys, "exact", "--input", bad, "--graph-mode", "weighted")[0] == 2
    assert run(capsys, "update")[0] == 2


def test_consistency_error_exit_code(capsys, tmp_path, graph_file):
    state = tmp_path / "s.json"
    run(capsys, "init", "--input", graph_file, "--state", state, "--graph-mode", "weighted", "--epsilon", "0.3")
    batch = tmp_path / "b.txt"
    batch.write_text("W 1 3 2.0\n")
    code, _, err = run(capsys, "update", "--state", state, "--batch", batch)
    assert code == 3 and "consistency" in err


def test_bad_batch_line(capsys, tmp_path, graph_file):
    state = tmp_path / "s.json"
    run(capsys, "init", "--input", graph_file, "--state", state, "--epsilon", "0.3")
    batch = tmp_path / "b.txt"
    batch.write_text("I 1 3\nX 1 2\n")
    code, _, err = run(capsys, "update", "--state", state, "--batch", batch)
    assert code == 2 and "line 2" in err


def test_batch_size_range(capsys):
    with pytest.raises(SystemExit):
        main(["bench", "--batch-size", "2048"])


def test_console_entry_point(graph_file):
    proc = subprocess.run([sys.executable, "-m", "dynbc.cli", "exact", "--input", str(graph_file)],
                          capture_output=True, text=True, check=True)
    assert len(proc.stdout.splitlines()) == 5
