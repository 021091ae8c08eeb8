from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import DATA
from minimalcodes.cli import main
from minimalcodes.formats import MatrixFile


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_even_lines(tmp_path, capsys):
    out = tmp_path / "g.txt"
    code, text, _ = run(capsys, "construct", "even-lines", "--q", "2", "--k", "6", "--out", str(out))
    assert code == 0
    assert "[27,6,10]_2 verified minimal" in text
    mf = MatrixFile.read(out)
    assert (mf.k, mf.n) == (6, 27)


def test_construct_tetrahedron_json(capsys):
    code, text, _ = run(capsys, "construct", "tetrahedron", "--q", "3", "--k", "4", "--json")
    assert code == 0
    rep = json.loads(text)
    assert rep["kind"] == "construction"
    assert (rep["results"]["n"], rep["results"]["k"], rep["results"]["verified_d"]) == (16, 4, 7)


def test_construct_precondition_exit(capsys):
    code, _, err = run(capsys, "construct", "rnt", "--q", "3", "--k", "4")
    assert code == 1
    assert "requires q >= 2k-3" in err


def test_construct_then_analyze_round_trip(tmp_path, capsys):
    g = tmp_path / "g.txt"
    rep = tmp_path / "r.json"
    assert run(capsys, "construct", "best", "--q", "4", "--k", "4", "--out", str(g), "--report", str(rep))[0] == 0
    built = json.loads(rep.read_text())["results"]
    code, text, _ = run(capsys, "analyze", str(g), "--json")
    assert code == 0
    got = json.loads(text)["results"]
    assert (got["n"], got["k"], got["d"]) == (built["n"], built["k"], built["verified_d"])
    assert got["minimal"] is True


def test_analyze_ternary_fixture(capsys):
    code, text, _ = run(capsys, "analyze", str(DATA / "fourteen_four_ternary.txt"),
                        "--support-poly", "--cover-witnesses", "--json")
    assert code == 0
    res = json.loads(text)["results"]
    assert (res["d"], res["w_max"], res["minimal"]) == (7, 11, True)
    assert res["mean"] == {"num": 189, "den": 20}
    assert res["pless"]["holds"]
    assert res["support_poly"]["nonzeros"] == 2
    assert res["support_poly"]["canonical_agrees"]
    ws = res["cover_witnesses"]["witnesses"]
    assert [w["j"] for w in ws] == list(range(8, 15))
    assert [w["weight"] for w in ws] == [9] + [11] * 6


def test_analyze_binary_fixture(capsys):
    code, text, _ = run(capsys, "analyze", str(DATA / "twentyseven_six_binary.txt"))
    assert code == 0
    assert text.startswith("[27,6,10]_2")
    assert "minimal=True" in text


def test_analyze_identity_gives_witness(tmp_path, capsys):
    f = tmp_path / "id.txt"
    f.write_text("2 1 2 2 2\n1 0\n0 1\n")
    code, text, _ = run(capsys, "analyze", str(f), "--json")
    assert code == 0
    res = json.loads(text)["results"]
    assert res["minimal"] is False
    assert res["witness"]["smaller_codeword"] == [1, 0]


def test_analyze_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("2 1 2 1 2\n1 5\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 1
    assert "line 2, column 3" in err


def test_enumeration_limit_is_refused(capsys):
    code, _, err = run(capsys, "--max-enum", "10", "analyze", str(DATA / "fourteen_four_ternary.txt"))
    assert code == 1
    assert "enumeration limit" in err


def test_bounds_infeasible(capsys):
    code, text, _ = run(capsys, "bounds", "--q", "4", "--k", "4", "--n", "16")
    assert code == 3
    assert "stat_quadratic = -42" in text


def test_bounds_window(capsys):
    code, text, _ = run(capsys, "bounds", "--q", "2", "--k", "8", "--d", "16", "--w", "24", "--json")
    assert code == 0
    res = json.loads(text)["results"]
    assert res["n_window"] == [34, 45]


def test_bounds_d_pinned(capsys):
    code, text, _ = run(capsys, "bounds", "--q", "4", "--k", "4", "--n", "17", "--json")
    assert code == 0
    assert json.loads(text)["results"]["d_range"] == [10, 10]


def test_mtable_outputs(capsys):
    code, text, _ = run(capsys, "mtable", "--q", "4", "--kmax", "6")
    assert code == 0
    assert "k=6: 26 (statistical_length) <= m <= 45 (even-lines)" in text
    code, text, _ = run(capsys, "mtable", "--q", "4", "--kmax", "6", "--json")
    rows = json.loads(text)["results"]["rows"]
    assert rows[-1]["upper"] == 45 and rows[1]["exact"] == 12
    code, text, _ = run(capsys, "mtable", "--q", "9", "--kmax", "3", "--csv")
    assert text.splitlines()[-1].startswith("9,3,26,plane_two_fold,26,baer,26,")


def test_outputs_are_deterministic(capsys):
    args = ["--threads", "1", "analyze", str(DATA / "twentyseven_six_binary.txt"), "--json"]
    a = run(capsys, *args)[1]
    args[1] = "4"
    b = run(capsys, *args)[1]
    assert a == b


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "tetrahedron", "--q", "3"])
    assert exc.value.code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "minimalcodes", "bounds", "--q", "4", "--k", "4", "--n", "16"],
                          capture_output=True, text=True)
    assert proc.returncode == 3
    assert "infeasible(statistical_length)" in proc.stdout
