import json

import pytest

from quasinv.charp.scan import ScanCell, ScanTable
from quasinv.charp.witness import Witness
from quasinv.console import cli
from quasinv.console.cli import run


@pytest.fixture
def poly_file(tmp_path):
    def write(text):
        path = tmp_path / "poly.txt"
        path.write_text(text + "\n")
        return str(path)
    return write


def test_numerator_text(capsys):
    assert run(["numerator", "--n", "2", "--m", "1", "--field", "q"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "1+t^3"
    assert "top_degree_ok: true" in lines
    assert "palindromic: true" in lines
    assert "rank_ok: true" in lines
    assert "nonneg: true" in lines


def test_partial_numerator(capsys):
    assert run(["numerator", "--n", "3", "--m", "1", "--max-degree", "5"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("1+2t^4+2t^5\n(partial: known through t^5)\n")
    assert "rank_ok: undetermined (known only through t^5)" in out


def test_dims_csv(capsys):
    assert run(["dims", "--n", "2", "--m", "1", "--max-degree", "3", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "d,dim\n0,1\n1,1\n2,2\n3,3\n"


def test_fv_csv(capsys):
    assert run(["fv", "--n", "3", "--m", "1", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "d,coeff"
    assert lines[5] == "4,2"
    assert lines[-1] == "9,1"


def test_witness_orders(capsys):
    assert run(["witness", "--n", "3", "--m", "12", "--p", "5"]) == 0
    assert capsys.readouterr().out == "a=2 k=0 2b=0\n"
    assert run(["witness", "--n", "3", "--m", "12", "--p", "5", "--order", "lex"]) == 0
    assert capsys.readouterr().out == "a=1 k=2 2b=0\n"
    assert run(["witness", "--n", "3", "--m", "1", "--p", "7"]) == 0
    assert capsys.readouterr().out == "none\n"


def test_witness_json(capsys):
    assert run(["witness", "--n", "3", "--m", "7", "--p", "3", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["witness"] == {"n": 3, "m": 7, "p": 3, "a": 1, "k": 2, "two_b": 0}


def test_construct(capsys):
    assert run(["construct", "--n", "3", "--m", "1", "--p", "3"]) == 0
    out = capsys.readouterr().out
    assert "degree: 3 (bound 3)" in out
    assert "quasi_invariant: true" in out
    assert "nonsymmetric: true" in out


def test_anomalies_csv(capsys):
    assert run(["anomalies", "--m-max", "2", "--p-max", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "m,p,anomalous,witness_a,witness_k,lowest_nonsym_degree_fp,lowest_nonsym_degree_q,fallback_used"
    assert lines[1] == "0,2,false,,,1,1,false"
    assert "1,3,true,1,0,3,4,false" in lines
    assert "2,5,true,1,0,5,7,false" in lines
    assert len(lines) == 1 + 3 * 3


def test_anomalies_full_series(capsys):
    assert run(["anomalies", "--m-min", "1", "--m-max", "1", "--p-max", "3", "--full-series"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].endswith(",constructed_degree,series_differs")
    assert lines[2] == "1,3,true,1,0,3,4,false,3,true"


def test_anomalies_text(capsys):
    assert run(["anomalies", "--m-max", "3", "--p-max", "7", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "m=3: 2:(3,0) 3:(2,0) 7:(1,0)" in out


def test_member(capsys, poly_file):
    path = poly_file("x1^4")
    assert run(["member", "--m", "1", "--field", "fp:2", "--file", path, "--n", "2"]) == 0
    assert capsys.readouterr().out == "true\n"
    assert run(["member", "--m", "1", "--file", path, "--n", "2"]) == 0
    assert capsys.readouterr().out == "false\n"


def test_twisted_commands(capsys, poly_file):
    assert run(["twisted", "series", "--m", "1", "--f", ""]) == 0
    assert capsys.readouterr().out == "1+t^3\n"
    assert run(["twisted", "dims", "--m", "1", "--f", "x^2", "--max-degree", "3", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "d,dim,predicted\n0,0,0\n1,1,1\n2,2,2\n3,3,3\n"
    assert run(["twisted", "pm", "--m", "1", "--z", "1/2"]) == 0
    assert capsys.readouterr().out == "1/4*x1+3/4*x2\ndiagonal: x1\n"
    assert run(["twisted", "member", "--m", "2", "--f", "x", "--file", poly_file("x2")]) == 0
    assert capsys.readouterr().out == "true\n"
    assert run(["twisted", "member", "--m", "1", "--f", "", "--n", "3", "--file", poly_file("x3")]) == 0
    assert capsys.readouterr().out == "false\n"


def test_qdef_member(capsys, poly_file):
    path = poly_file("x1 + 2*x2")
    assert run(["qdef", "member", "--m", "0", "--q", "2", "--file", path]) == 0
    assert capsys.readouterr().out == "true\n"
    assert run(["qdef", "member", "--m", "1", "--q", "0", "--file", path]) == 1
    assert "q must be nonzero" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["witness", "--n", "3", "--m", "1", "--p", "4"],
    ["witness", "--n", "3", "--m", "1", "--p", "3", "--format", "csv"],
    ["construct", "--n", "3", "--m", "1", "--p", "7"],
    ["dims", "--n", "x", "--m", "1", "--max-degree", "2"],
    ["member", "--m", "1", "--file", "/nonexistent/poly.txt"],
    ["numerator", "--n", "3", "--m", "1", "--field", "fp:4"],
    ["twisted", "series", "--m", "1", "--f", "(y-1)"],
    ["twisted", "dims", "--m", "1", "--f", "", "--max-degree", "-1"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(capsys, argv):
    assert run(argv) == 1
    assert capsys.readouterr().err


def test_help_exits_cleanly():
    assert run(["--help"]) == 0


def test_theorem_violation_exits_2(capsys, monkeypatch):
    cell = ScanCell(3, 1, 3, False, Witness(1, 3, 3, 1, 0), 4, 4, 3, False, None)

    def fake_scan(n, m_max, p_max, **kwargs):
        return ScanTable(n, m_max, p_max, (cell,))

    monkeypatch.setattr(cli, "anomaly_scan", fake_scan)
    assert run(["anomalies", "--m-max", "1", "--p-max", "3"]) == 2
    captured = capsys.readouterr()
    assert "1,3,false,1,0,4,4,false" in captured.out
    assert "verification failed: witness found but no anomaly at (m=1, p=3)" in captured.err


@pytest.mark.parametrize("text, field", [("1/0*x1", "q"), ("1/2*x1", "fp:2")])
def test_undefined_coefficient_is_usage_error(capsys, poly_file, text, field):
    assert run(["member", "--m", "1", "--field", field, "--file", poly_file(text)]) == 1
    err = capsys.readouterr().err
    assert "Cannot parse polynomial" in err
    assert "Traceback" not in err
