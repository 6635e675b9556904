import json

import pytest

from semicomm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def g3(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "gerstenhaber", "--n", "3")
    assert code == 0
    path = tmp_path / "pair.json"
    path.write_text(out)
    return path


def test_dim_gerstenhaber(capsys, g3):
    code, out, _ = run(capsys, "dim", str(g3))
    assert code == 0
    assert out.splitlines()[0] == "6"
    code, out, _ = run(capsys, "dim", str(g3), "--json", "--basis")
    payload = json.loads(out)
    assert payload["dim"] == 6 and len(payload["basis"]) == 6
    assert payload["words"] == ["I", "A", "B", "AA", "AB", "BB"]


def test_verify_idem7(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "idem7")
    path = tmp_path / "idem7.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", "--theorem", "THM_6_6", "--instance", str(path))
    assert code == 0 and "holds" in out
    code, out, _ = run(capsys, "verify", "--theorem", "THM_6_6", "--instance", str(path), "--json")
    report = json.loads(out)
    assert report["outcome"] == "holds" and report["details"]["dim"] == 9


def test_verify_violation_exit_code(capsys, tmp_path, monkeypatch):
    from semicomm import verifier
    monkeypatch.setattr(verifier, "_dim", lambda *g: 99)
    code, out, _ = run(capsys, "construct", "idem7")
    path = tmp_path / "idem7.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", "--theorem", "THM_6_6", "--instance", str(path))
    assert code == 1 and "violated" in out


def test_non_square_dim(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"rows": 2, "cols": 3, "entries": [["1", "0", "0"], ["0", "1", "0"]]}))
    code, _, err = run(capsys, "dim", str(path))
    assert code == 2 and "not square" in err


def test_malformed_entry_reports_path(capsys, tmp_path):
    path = tmp_path / "p.json"
    bad = {"A": {"rows": 2, "cols": 2, "entries": [["1", "0"], ["0", "2/4"]]},
           "B": {"rows": 2, "cols": 2, "entries": [["1", "0"], ["0", "1"]]}}
    path.write_text(json.dumps(bad))
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and "$.A.entries[1][1]" in err
    path.write_text("{")
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 2


def test_unknown_command(capsys):
    code, _, err = run(capsys, "bogus")
    assert code == 2 and "usage" in err


def test_analyze(capsys, g3):
    code, out, _ = run(capsys, "analyze", str(g3), "--json")
    report = json.loads(out)
    assert code == 0
    assert report["sign_commutator"] == "Positive"
    assert report["chain_block_sizes"] == [1, 1, 1]
    assert report["refined_bound"] == 6 and report["dim"] == 6


@pytest.mark.parametrize("argv,key", [
    (["jordan", "--n", "3"], "entries"),
    (["cycle", "--n", "4"], "entries"),
    (["companion", "--coeffs", "0", "1/2", "3"], "entries"),
    (["permutation", "--sizes", "2", "3"], "entries"),
    (["intertwiners", "--m", "4", "--n", "6"], "basis"),
    (["idem3"], "E"),
    (["catalan", "--n", "5"], "F"),
    (["random-pair", "--n", "3", "--seed", "4", "--family", "block_chain"], "A"),
])
def test_construct(capsys, argv, key):
    code, out, _ = run(capsys, "construct", *argv)
    assert code == 0 and key in json.loads(out)
    assert run(capsys, "construct", *argv)[1] == out


def test_randomness_needs_seed(capsys):
    assert run(capsys, "construct", "random-pair", "--n", "3", "--family", "block_chain")[0] == 2
    assert run(capsys, "verify", "--n-max", "2")[0] == 2
    assert run(capsys, "search", "dims", "--n", "2")[0] == 2


def test_construct_bad_coeff(capsys):
    code, _, err = run(capsys, "construct", "companion", "--coeffs", "1", "2/4")
    assert code == 2 and "--coeffs" in err


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "2", "--trials", "3", "--seed", "5")
    assert code == 0 and "THM_6_6" in out
    code, out2, _ = run(capsys, "verify", "--n-max", "2", "--trials", "3", "--seed", "5", "--json")
    payload = json.loads(out2)
    assert set(payload["summary"]) >= {"GLS", "COR_TRI"}
    assert run(capsys, "verify", "--n-max", "2", "--trials", "3", "--seed", "5", "--json")[1] == out2


def test_search_cli(capsys, tmp_path):
    out_dir = tmp_path / "w"
    code, out, _ = run(capsys, "search", "dims", "--n", "2", "--trials", "100", "--seed", "7",
                       "--out", str(out_dir), "--json")
    payload = json.loads(out)
    assert code == 0 and {2, 3} <= set(payload["attained"])
    assert sorted(p.name for p in out_dir.iterdir()) == [f"witness-{d}.json" for d in payload["attained"]]
    code, out, _ = run(capsys, "search", "idem-even", "--n", "2", "--trials", "20", "--seed", "1")
    assert code == 0 and "max dim found" in out
    assert run(capsys, "search", "idem-even", "--n", "3", "--seed", "1")[0] == 2
