import json

from bruhatspec import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_interval_figure1(capsys):
    code, out, _ = run(capsys, "interval", "--matrix", "A3",
                       "--word", "3,2,1,2,3")
    assert code == 0
    assert "20 elements, ranks 1,3,5,6,4,1" in out


def test_interval_malformed_word(capsys):
    code, _, err = run(capsys, "interval", "--matrix", "A3", "--word", "1,x")
    assert code == 2
    assert "malformed word" in err


def test_interval_non_reduced_word(capsys):
    code, _, err = run(capsys, "interval", "--matrix", "A2", "--word", "1,1")
    assert code == 2


def test_unknown_verb(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_unknown_matrix(capsys):
    code, _, err = run(capsys, "interval", "--matrix", "Z9", "--word", "1")
    assert code == 2


def test_partition_output(capsys):
    code, out, _ = run(capsys, "partition", "--matrix", "A3",
                       "--word", "2,1,3", "--gen", "2")
    assert code == 0
    assert "W2 (1): e" in out
    assert "W1 (1): 2" in out


def test_pushout_check(capsys):
    code, out, _ = run(capsys, "pushout-check", "--matrix", "A3",
                       "--word", "2,1,3", "--gen", "2")
    assert code == 0
    assert "square_commutes: ok" in out


def test_pipeline_builtin(capsys):
    code, out, _ = run(capsys, "pipeline", "--builtin", "qaffine3")
    assert code == 0
    assert "final: 8 elements" in out


def test_pipeline_builtin_qmatrix(capsys):
    code, out, _ = run(capsys, "pipeline", "--builtin", "qmatrix2")
    assert code == 0
    assert "final: 14 elements, ranks 1,3,5,4,1" in out
    assert "square=ok" in out


def test_pipeline_bad_file(tmp_path, capsys):
    path = tmp_path / "nope.json"
    code, _, err = run(capsys, "pipeline", "--file", str(path))
    assert code == 2


def test_pipeline_verification_failure(tmp_path, capsys):
    d = {"coxeter": "A2",
         "steps": [{"var": "x1", "gen": 1},
                   {"var": "x2", "gen": 2,
                    "delta": {"x1": [{"unit": True}]}}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    code, _, err = run(capsys, "pipeline", "--file", str(path))
    assert code == 1
    assert "verification failure" in err


def test_export_json(capsys):
    code, out, _ = run(capsys, "export", "--matrix", "A2",
                       "--word", "1,2", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert len(d["elements"]) == 4


def test_export_dot_deterministic(capsys):
    code, out1, _ = run(capsys, "export", "--matrix", "A3",
                        "--word", "2,1,3", "--format", "dot")
    assert code == 0
    _, out2, _ = run(capsys, "export", "--matrix", "A3",
                     "--word", "2,1,3", "--format", "dot")
    assert out1 == out2
    assert out1.count("->") == 12   # Hasse edges of the cube


def test_export_to_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, _, _ = run(capsys, "export", "--matrix", "A2", "--word", "1",
                     "--format", "json", "--output", str(path))
    assert code == 0
    assert json.loads(path.read_text())["elements"]


def test_matrix_from_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"rank": 2, "m": [[1, 3], [3, 1]]}))
    code, out, _ = run(capsys, "interval", "--matrix", str(path),
                       "--word", "1,2,1")
    assert code == 0
    assert "6 elements" in out
