import csv
import io
import json

import pytest

from rpartite.cli import main
from rpartite.edgelist import read_edge_list, write_edge_list
from rpartite.graph import complete_graph, cycle_graph
from rpartite.constructions import turan_graph
from rpartite.sweep import COLUMNS, expand_config, parse_rational, rows_to_csv, run_sweep


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "argv, n, m",
    [
        (["gen", "sharpness", "--n", "18", "--r", "2", "--alpha", "1/12"], 18, 67),
        (["gen", "turan", "--n", "6", "--r", "3"], 6, 12),
        (["gen", "random", "--n", "20", "--r", "2", "--t", "5", "--seed", "7"], 20, 95),
        (["gen", "c5blowup", "--sizes", "3,2,3,5,5"], 18, 67),
        (["gen", "conjecture", "--r", "3", "--sizes", "1,1,1,1,1", "--join-sizes", "1"], 6, 10),
    ],
)
def test_gen_writes_readable_files(tmp_path, capsys, argv, n, m):
    out = tmp_path / "g.txt"
    code, _, _ = run(argv + ["--out", str(out)], capsys)
    assert code == 0
    G = read_edge_list(out)
    assert (G.n, G.m) == (n, m)
    sidecar = json.loads((tmp_path / "g.txt.json").read_text())
    assert sidecar["kind"] == argv[1]
    # round trip through solve
    code, text, _ = run(["solve", str(out), "--r", "3", "--mode", "exact"], capsys)
    assert code == 0 and json.loads(text)["exact"]["status"] == "optimal"


def test_sharpness_sidecar_schema(tmp_path, capsys):
    out = tmp_path / "s.txt"
    run(["gen", "sharpness", "--n", "18", "--r", "2", "--alpha", "1/12", "--out", str(out)], capsys)
    doc = json.loads((tmp_path / "s.txt.json").read_text())
    assert doc["sizes"] == {"X": 2, "A": 3, "B": 3, "C": 5, "D": 5}
    assert doc["alpha"] == "1/12" and doc["rounding_applied"] is False


def _write(tmp_path, G, name="g.txt"):
    path = tmp_path / name
    write_edge_list(G, path)
    return str(path)


def test_solve_c5_both(tmp_path, capsys):
    code, text, _ = run(["solve", _write(tmp_path, cycle_graph(5)), "--r", "2"], capsys)
    doc = json.loads(text)
    assert code == 0
    assert doc["exact"]["deletions"] == 1 and doc["pipeline"]["deletions"] == 1
    assert doc["pipeline"]["trace"]["anchors"] == [0, 1]


def test_solve_turan(tmp_path, capsys):
    _, text, _ = run(["solve", _write(tmp_path, turan_graph(9, 3)), "--r", "3"], capsys)
    doc = json.loads(text)
    assert doc["exact"]["deletions"] == 0 and doc["pipeline"]["deletions"] == 0


def test_solve_sharpness(tmp_path, capsys):
    out = tmp_path / "s.txt"
    run(["gen", "sharpness", "--n", "18", "--r", "2", "--alpha", "1/12", "--out", str(out)], capsys)
    _, text, _ = run(["solve", str(out), "--r", "2", "--mode", "both"], capsys)
    doc = json.loads(text)
    assert doc["exact"]["deletions"] == 6
    assert 6 <= doc["pipeline"]["deletions"] <= 14


def test_solve_reports_clique_witness(tmp_path, capsys):
    code, text, _ = run(["solve", _write(tmp_path, complete_graph(4)), "--r", "3", "--mode", "pipeline"], capsys)
    assert code == 2
    assert json.loads(text)["pipeline"]["witness"] == [0, 1, 2, 3]


def test_solve_canonical_and_limits(tmp_path, capsys):
    path = _write(tmp_path, cycle_graph(7))
    _, text, _ = run(["solve", path, "--r", "2", "--mode", "exact", "--canonical"], capsys)
    assert json.loads(text)["exact"]["partition"] == [0, 0, 1, 0, 1, 0, 1]
    _, text, _ = run(["solve", path, "--r", "2", "--mode", "exact", "--node-limit", "1"], capsys)
    assert json.loads(text)["exact"]["status"] in ("node-limit", "optimal")


def test_solve_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n2 1\n")
    assert run(["solve", str(bad), "--r", "2"], capsys)[0] == 2
    assert run(["solve", str(tmp_path / "missing.txt"), "--r", "2"], capsys)[0] == 2


def test_usage_errors(capsys):
    assert run(["solve"], capsys)[0] == 1
    assert run(["frobnicate"], capsys)[0] == 1
    assert run(["--help"], capsys)[0] == 0
    assert run(["bounds", "--n", "10", "--r", "0", "--alpha", "0.1"], capsys)[0] == 1


def test_bounds(capsys):
    code, text, _ = run(["bounds", "--n", "18", "--r", "2", "--alpha", "1/12"], capsys)
    doc = json.loads(text)
    assert code == 0
    assert doc["sharpness_lower"] == pytest.approx(6) and doc["sharpness_edges"] == pytest.approx(67)
    assert round(doc["main_upper"]) == 1242 and doc["furedi_upper"] == 27
    _, text, _ = run(["bounds", "--n", "81", "--r", "3", "--alpha", "1/27"], capsys)
    assert json.loads(text)["sharpness_lower"] == pytest.approx(54)
    _, text, _ = run(["bounds", "--n", "1000", "--r", "2", "--alpha", "0"], capsys)
    assert json.loads(text)["main_upper"] == 0
    assert run(["bounds", "--n", "10", "--r", "2", "--alpha=-1/2"], capsys)[0] == 2
    assert run(["bounds", "--n", "10", "--r", "2", "--alpha", "abc"], capsys)[0] == 2


def test_parse_rational():
    from fractions import Fraction

    assert parse_rational("1/12") == Fraction(1, 12)
    assert parse_rational("1e-4") == Fraction(1, 10000)
    assert parse_rational(0.5) == 0.5


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_empty_grid():
    assert rows_to_csv(run_sweep({"generators": []})) == ",".join(COLUMNS) + "\n"


def test_sweep_sharpness_row():
    cfg = {"generators": [{"kind": "sharpness", "params": {"n": 18}, "grid": {"alpha": ["1/12"]}}], "r": 2,
           "exact": {"enabled": True, "time_limit_s": 10}}
    rows = _csv_rows(rows_to_csv(run_sweep(cfg)))
    assert len(rows) == 1
    row = rows[0]
    assert row["exact"] == "6" and row["exact_status"] == "optimal" and row["e"] == "67" and row["t"] == "14"
    assert row["status"] == "ok" and row["ms"] == ""


def test_sweep_random_contract_chain():
    cfg = {"generators": [{"kind": "random", "params": {"n": 14}, "grid": {"t": list(range(6))}}],
           "r": 2, "seeds": [0], "exact": {"enabled": True}}
    rows = _csv_rows(rows_to_csv(run_sweep(cfg)))
    assert len(rows) == 6
    for row in rows:
        assert int(row["exact"]) <= int(row["pipeline"]) <= int(row["t"])


def test_sweep_deterministic_and_parallel_identical():
    cfg = {"generators": [{"kind": "random", "params": {"n": 12}, "grid": {"t": [1, 4, 8]}},
                          {"kind": "turan", "params": {"n": 9}, "grid": {}}],
           "r": [2, 3], "seeds": [1, 2], "exact": {"enabled": True}}
    first = rows_to_csv(run_sweep(cfg))
    assert first == rows_to_csv(run_sweep(cfg))
    assert first == rows_to_csv(run_sweep(cfg, jobs=2))
    assert len(_csv_rows(first)) == 3 * 2 * 2 + 2


def test_sweep_records_row_errors():
    cfg = {"generators": [{"kind": "sharpness", "params": {"n": 18}, "grid": {"alpha": ["1/2", "1/12"]}}],
           "r": 2, "exact": {"enabled": False}}
    rows = _csv_rows(rows_to_csv(run_sweep(cfg)))
    assert rows[0]["status"].startswith("error") and rows[1]["status"] == "ok"
    assert rows[1]["exact"] == ""


def test_sweep_timing_column():
    cfg = {"generators": [{"kind": "turan", "params": {"n": 6}}], "r": 3, "timing": True}
    assert float(_csv_rows(rows_to_csv(run_sweep(cfg)))[0]["ms"]) >= 0


def test_sweep_rejects_unknown_kind():
    with pytest.raises(ValueError):
        expand_config({"generators": [{"kind": "petersen"}]})


def test_sweep_cli(tmp_path, capsys):
    cfg = {"generators": [{"kind": "random", "params": {"n": 10}, "grid": {"t": [2]}}], "r": 2, "seeds": [3],
           "exact": {"enabled": True}, "output": str(tmp_path / "out.csv")}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert run(["sweep", str(path)], capsys)[0] == 0
    text = (tmp_path / "out.csv").read_text()
    assert text.splitlines()[0] == ",".join(COLUMNS)
    assert len(text.splitlines()) == 2


@pytest.mark.parametrize("suite", ["sharpness", "rpartite-turan", "fmax", "pipeline"])
def test_verify_suites(capsys, suite):
    code, text, err = run(["verify", suite], capsys)
    doc = json.loads(text)
    assert code == 0 and doc["passed"]
    assert "PASS" in err


def test_verify_sharpness_measured(capsys):
    _, text, _ = run(["verify", "sharpness"], capsys)
    measured = json.loads(text)["checks"][0]["measured"]
    assert measured["exact"] == 6 and measured["formula"] == pytest.approx(6) and measured["edges"] == 67


def test_verify_failure_exit_code(capsys, monkeypatch):
    from rpartite import verify

    monkeypatch.setitem(verify.SUITES, "fmax", lambda: [verify.Check("fake", False)])
    assert run(["verify", "fmax"], capsys)[0] == 3


def test_check(tmp_path, capsys):
    code, text, _ = run(["check", _write(tmp_path, cycle_graph(5)), "--r", "2"], capsys)
    doc = json.loads(text)
    assert code == 0
    assert doc["clique_free"] and not doc["r_partite"] and doc["t"] == 1 and doc["witness"] is None
    _, text, _ = run(["check", _write(tmp_path, complete_graph(4), "k4.txt"), "--r", "3"], capsys)
    doc = json.loads(text)
    assert not doc["clique_free"] and doc["witness"] == [0, 1, 2, 3]
    _, text, _ = run(["check", _write(tmp_path, turan_graph(9, 3), "t.txt"), "--r", "3"], capsys)
    assert json.loads(text)["r_partite"]


def test_verify_all(capsys):
    code, text, err = run(["verify", "all"], capsys)
    assert code == 0 and json.loads(text)["passed"]
    assert "FAIL" not in err
