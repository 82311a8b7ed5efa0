import json

import pandas as pd
import pytest

from kouter.cli import main


def _report(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.emb"
    assert main(["gen", "--canned", "k4", "-o", str(path)]) == 0
    return path


def test_gen_canned(tmp_path, capsys):
    path = tmp_path / "k4.emb"
    assert main(["gen", "--canned", "k4", "-o", str(path)]) == 0
    report = _report(capsys.readouterr().out)
    assert report["k"] == "2"
    assert path.read_text(encoding="utf-8").startswith("c kouter canned k4\np emb 4 6\n")


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.emb", tmp_path / "b.emb"
    args = ["--k", "3", "--n", "80", "--seed", "9"]
    assert main(["gen", *args, "-o", str(a)]) == 0
    assert main(["gen", *args, "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_many(tmp_path, capsys):
    assert main(["gen", "--k", "2", "--n", "30", "--count", "3", "-o", str(tmp_path / "g.emb")]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["g_000.emb", "g_001.emb", "g_002.emb"]
    assert _report(capsys.readouterr().out)["count"] == "3"


def test_index_json(k4_file, capsys):
    capsys.readouterr()
    assert main(["index", str(k4_file), "--layers", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["k"] == 2
    assert report["faces"] == 4
    assert report["layers"] == [1, 1, 1, 2]


def test_tree_then_check(k4_file, tmp_path, capsys):
    td = tmp_path / "k4.td"
    capsys.readouterr()
    assert main(["tree", str(k4_file), "-o", str(td), "--verify", "--stats"]) == 0
    report = _report(capsys.readouterr().out)
    assert report["verified"] == "true"
    assert int(report["width"]) <= int(report["bound"]) == 5
    assert {"vr", "er", "fill_bound", "k_prime", "time_parse", "time_write"} <= set(report)
    assert main(["check-td", str(k4_file), str(td)]) == 0
    assert _report(capsys.readouterr().out)["width"] == report["width"]


def test_tree_on_cycle(tmp_path, capsys):
    emb, td = tmp_path / "c5.emb", tmp_path / "c5.td"
    main(["gen", "--canned", "c5", "-o", str(emb)])
    capsys.readouterr()
    assert main(["tree", str(emb), "-o", str(td)]) == 0
    report = _report(capsys.readouterr().out)
    assert report["width"] == "2"
    assert report["method"] == "outerplanar"


def test_branch_then_check(k4_file, tmp_path, capsys):
    bd, forest = tmp_path / "k4.bd", tmp_path / "k4.forest"
    capsys.readouterr()
    assert main(["branch", str(k4_file), "-o", str(bd), "--verify", "--dump-forest", str(forest)]) == 0
    report = _report(capsys.readouterr().out)
    assert 3 <= int(report["width"]) <= 5
    assert len(forest.read_text(encoding="utf-8").splitlines()) == 6
    assert main(["check-bd", str(k4_file), str(bd)]) == 0
    assert _report(capsys.readouterr().out)["width"] == report["width"]


def test_branch_single_edge(tmp_path, capsys):
    emb, bd = tmp_path / "p2.emb", tmp_path / "p2.bd"
    main(["gen", "--canned", "p2", "-o", str(emb)])
    capsys.readouterr()
    assert main(["branch", str(emb), "-o", str(bd)]) == 0
    assert _report(capsys.readouterr().out)["width"] == "0"
    assert bd.read_text(encoding="utf-8") == "c component 1\ns bd 1 1 1\nl 1 1 2\n"


def test_empty_graph_bounds(tmp_path, capsys):
    emb = tmp_path / "empty.emb"
    emb.write_text("p emb 0 0\n", encoding="utf-8")
    assert main(["tree", str(emb), "-o", str(tmp_path / "empty.td")]) == 0
    tree = _report(capsys.readouterr().out)
    assert main(["branch", str(emb), "-o", str(tmp_path / "empty.bd")]) == 0
    branch = _report(capsys.readouterr().out)
    assert tree["k"] == branch["k"] == "0"
    assert tree["bound"] == branch["bound"] == "0"
    assert branch["width"] == "0"


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.emb"
    bad.write_text("p emb 2 1\nr 1 2\nr 2 1\nz\n", encoding="utf-8")
    assert main(["tree", str(bad), "-o", str(tmp_path / "bad.td")]) == 1
    err = capsys.readouterr().err
    assert "[error]" in err
    assert "bad.emb:4:" in err


def test_undecodable_input(tmp_path, capsys):
    bad = tmp_path / "bad.emb"
    bad.write_bytes(b"p emb 2 1\nr 1 2\nr 2 1\no 1 2\n\xff\xfe\n")
    assert main(["index", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "[error]" in err
    assert "bad.emb:5:" in err


def test_failed_check_exits_one(k4_file, tmp_path, capsys):
    bd = tmp_path / "wrong.bd"
    bd.write_text("s bd 1 1 1\nl 1 1 2\n", encoding="utf-8")
    assert main(["check-bd", str(k4_file), str(bd)]) == 1
    assert "edge_coverage" in capsys.readouterr().err


def test_oracles(k4_file, capsys):
    capsys.readouterr()
    assert main(["oracle-tw", str(k4_file)]) == 0
    assert _report(capsys.readouterr().out)["treewidth"] == "3"
    assert main(["oracle-bw", str(k4_file)]) == 0
    assert _report(capsys.readouterr().out)["branchwidth"] == "3"


def test_log_file(tmp_path):
    log = tmp_path / "logs" / "run.log"
    assert main(["gen", "--canned", "c4", "-o", str(tmp_path / "c4.emb"), "--log", str(log)]) == 0
    assert "[ok]" in log.read_text(encoding="utf-8")


def test_bench_empty_range(capsys):
    assert main(["bench", "--ks", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == []


def test_bench_small_grid(tmp_path):
    csv = tmp_path / "bench.csv"
    assert main(["bench", "--ks", "1", "2", "--ns", "12", "24", "--repeats", "2", "--csv", str(csv)]) == 0
    df = pd.read_csv(csv)
    assert len(df) == 4
    assert (df["tree_width"] <= df["tree_bound"]).all()
    assert (df["branch_width"] <= df["branch_bound"]).all()
