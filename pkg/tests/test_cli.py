import subprocess
import sys

from rainbow_threshold.cli import main
from rainbow_threshold.colouring import is_rainbow_colouring, read_colouring
from rainbow_threshold.experiment import read_csv
from rainbow_threshold.graph import Graph, cycle_graph, gnp_generate, read_graph, write_graph


def test_generate(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["generate", "--n", "30", "--p", "0.2", "--seed", "4", "--out", str(out)]) == 0
    assert read_graph(out) == gnp_generate(30, 0.2, 4)


def test_rc_exact(tmp_path, capsys):
    gfile = tmp_path / "c6.txt"
    write_graph(cycle_graph(6), gfile)
    assert main(["rc-exact", "--graph", str(gfile)]) == 0
    assert capsys.readouterr().out.strip() == "rc = 3"
    witness = read_colouring(tmp_path / "c6.txt.rc.col", cycle_graph(6))
    assert witness.k == 3 and is_rainbow_colouring(witness)
    assert main(["rc-exact", "--graph", str(gfile), "--budget", "3"]) == 3


def test_rc_exact_disconnected(tmp_path, capsys):
    gfile = tmp_path / "d.txt"
    write_graph(Graph(4, [(0, 1), (2, 3)]), gfile)
    assert main(["rc-exact", "--graph", str(gfile)]) == 0
    assert capsys.readouterr().out.strip() == "rc = inf"


def test_repair_exit_codes(tmp_path, capsys):
    dense = tmp_path / "dense.txt"
    write_graph(gnp_generate(40, 0.6, 1), dense)
    out = tmp_path / "dense.col"
    code = main(["repair", "--graph", str(dense), "--r", "3", "--seed", "1", "--out", str(out)])
    line = capsys.readouterr().out.strip()
    assert line.startswith("status=")
    assert (code == 0) == line.startswith("status=Success ")
    assert read_colouring(out, read_graph(dense)).k == 3
    sparse = tmp_path / "sparse.txt"
    write_graph(gnp_generate(40, 0.05, 1), sparse)
    assert main(["repair", "--graph", str(sparse), "--r", "3", "--seed", "1", "--iterate", "2"]) == 2
    assert "status=NoUnflaggedPath" in capsys.readouterr().out


def test_thresholds(capsys):
    assert main(["thresholds", "--n", "1000", "--r", "3"]) == 0
    out = capsys.readouterr().out
    for label in ("conjectured_threshold", "diameter_threshold", "semisharp_lower", "semisharp_upper",
                  "expected_rainbow_r_paths", "expected_bad_pairs"):
        assert label in out


def test_experiment_sweep(tmp_path):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("n_values=30\nr=3\nmultipliers=1.0,2.0\ntrials=2\nmaster_seed=5\n")
    out = tmp_path / "res.csv"
    assert main(["experiment", "sweep", "--config", str(cfg), "--out", str(out)]) == 0
    records, preamble = read_csv(out)
    assert len(records) == 4
    assert "mode=Sweep" in preamble


def test_experiment_config_errors(tmp_path, capsys):
    cfg = tmp_path / "bad.txt"
    cfg.write_text("trials=three\n")
    assert main(["experiment", "sweep", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == 1
    cfg.write_text("mode=ExpectationCheck\n")
    assert main(["experiment", "sweep", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == 1
    assert main(["experiment", "expectation", "--config", str(tmp_path / "missing.txt")]) == 1


def test_experiment_expectation(tmp_path, capsys):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("n_values=100\nmultipliers=1.0\ntrials=20\n")
    assert main(["experiment", "expectation", "--config", str(cfg)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("n,r,p,trials") and len(lines) == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "rainbow_threshold", "thresholds", "--n", "100", "--r", "4"],
        capture_output=True, text=True, check=True,
    )
    assert "conjectured_threshold" in res.stdout
