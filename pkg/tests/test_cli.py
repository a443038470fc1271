import json

import pytest

from reworknet import serialize_network
from reworknet.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_table_output(capsys):
    code, out, err = run(capsys, "solve", "--builtin", "test2", "--b", "1", "--d", "1")
    assert code == 0 and err == ""
    assert "s: 1" in out
    assert "R: 0.00970299" in out


def test_solve_solutions_listing(capsys):
    code, out, _ = run(capsys, "solve", "--builtin", "test1", "--b", "5", "--d", "3",
                       "--solutions")
    assert code == 0
    lines = [l for l in out.splitlines() if l and l[0].isdigit()]
    assert len(lines) == 16
    first = lines[0].split("\t")
    assert first[0] == "55"
    assert first[1] == "(0,55)"
    assert first[2] == "(5,5,0,0,0)"
    assert float(first[3]) == pytest.approx(0.00828039319235627200, rel=1e-5)


def test_solve_json_mirrors_report_fields(capsys):
    code, out, _ = run(capsys, "solve", "--builtin", "test1", "--b", "2", "--d", "1",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["b"] == 2 and doc["d"] == 1
    assert doc["line_counts"] == [5, 10]
    assert doc["total_tuples"] == 50
    assert doc["feasible_count"] == 5
    assert doc["reliability"] == pytest.approx(2.95585e-5, rel=1e-5)


def test_solve_rejects_d_above_b(capsys):
    code, _, err = run(capsys, "solve", "--builtin", "test1", "--b", "3", "--d", "5")
    assert code == 2
    assert "d" in err


def test_unknown_flag_exits_2(capsys):
    code, _, _ = run(capsys, "solve", "--builtin", "test1", "--b", "1", "--d", "1",
                     "--frobnicate")
    assert code == 2


def test_help_lists_flags(capsys):
    code, out, _ = run(capsys, "sweep", "--help")
    assert code == 0 or code == 2  # argparse exits 0 on --help
    assert "--builtin" in out and "--workers" in out and "--prune" in out


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--builtin", "test1", "--b", "1..1",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "name,b,d,m_1,m_2,T,S,s,R,flags"
    cells = lines[1].split(",")
    assert cells[:5] == ["test1", "1", "1", "2", "4"]
    assert cells[6:9] == ["8", "1", "1.0692000000000002e-05"]


def test_sweep_flags_column(capsys):
    code, out, _ = run(capsys, "sweep", "--builtin", "test1", "--b", "6..6")
    assert code == 0
    rows = {tuple(l.split(",")[1:3]): l.split(",")[-1]
            for l in out.strip().splitlines()[1:]}
    assert rows[("6", "6")] == "no-feasible"
    assert rows[("6", "1")] == ""


def _strip_t_column(csv_text):
    rows = []
    for line in csv_text.strip().splitlines():
        cells = line.split(",")
        del cells[-5]  # T column
        rows.append(",".join(cells))
    return "\n".join(rows)


def test_sweep_csv_deterministic_across_settings(capsys):
    outs = []
    for extra in ([], ["--prune"], ["--workers", "3"], ["--prune", "--workers", "2"]):
        code, out, _ = run(capsys, "sweep", "--builtin", "test2", "--b", "1..5",
                           "--format", "csv", *extra)
        assert code == 0
        outs.append(_strip_t_column(out))
    assert len(set(outs)) == 1


def test_sweep_summarize_footer(capsys):
    code, out, _ = run(capsys, "sweep", "--builtin", "test2", "--b", "1..3",
                       "--summarize", "--s-star", "100000")
    assert code == 0
    footer = out.strip().splitlines()[-1]
    assert footer.startswith("# summary: rows=6")
    assert "S_avg/S*=" in footer


def test_sweep_test5_b1(capsys):
    code, out, _ = run(capsys, "sweep", "--builtin", "test5", "--b", "1..1")
    assert code == 0
    cells = out.strip().splitlines()[1].split(",")
    assert cells[3:6] == ["6", "7", "4"]
    assert cells[7] == "168"


def test_network_file_loading(tmp_path, capsys, test1):
    path = tmp_path / "net.json"
    path.write_text(json.dumps(serialize_network(test1)))
    code, out, _ = run(capsys, "solve", "--network", str(path), "--b", "5", "--d", "3")
    assert code == 0
    assert "s: 16" in out


def test_network_file_errors(tmp_path, capsys):
    code, _, err = run(capsys, "solve", "--network", str(tmp_path / "missing.json"),
                       "--b", "1", "--d", "1")
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "solve", "--network", str(bad), "--b", "1", "--d", "1")
    assert code == 2 and "not valid JSON" in err


def test_check_agrees_on_builtin(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "test1", "--b", "5", "--d", "3")
    assert code == 0
    assert "s=16 agree" in out


def test_check_random_seed(capsys):
    code, out, _ = run(capsys, "check", "--random", "--seed", "7", "--b", "3", "--d", "1")
    assert code == 0
    assert "agree" in out


def test_check_box_guard_exits_2(capsys):
    code, _, err = run(capsys, "check", "--builtin", "test5", "--b", "9", "--d", "1")
    assert code == 2
    assert "above the limit" in err


def test_workers_env_default(capsys, monkeypatch):
    monkeypatch.setenv("REWORK_REL_WORKERS", "2")
    code, out, _ = run(capsys, "solve", "--builtin", "test1", "--b", "5", "--d", "3")
    assert code == 0 and "s: 16" in out
