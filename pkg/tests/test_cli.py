"""CLI dispatch, schemas, and reproducibility."""

import json

import pytest

from raylien.cli import dispatch, parse_monomial_form
from raylien.exactalg import PolyXY
from raylien.forms import OneForm


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_monomial_forms():
    assert parse_monomial_form("y^3 dx") == OneForm(PolyXY.monomial(0, 3))
    assert parse_monomial_form("x^4 y dx") == OneForm(PolyXY.monomial(4, 1))
    assert parse_monomial_form("3/7 x^2 y^5 dx") == OneForm(
        PolyXY.monomial(2, 5, "3/7")
    )
    assert parse_monomial_form("x dx") == OneForm(PolyXY.monomial(1, 0))
    with pytest.raises(ValueError):
        parse_monomial_form("z^2 dx")


def test_reduce_subcommand(capsys):
    code, out, _ = run(capsys, "reduce", "--case", "global-center",
                       "--form", "y^3 dx", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["u"] == ["-3/7"]
    assert data["v"] == ["0", "12/7"]


def test_reduce_is_byte_reproducible(capsys):
    _, out1, _ = run(capsys, "reduce", "--case", "eight-interior",
                     "--form", "x^2 y^5 dx", "--json")
    _, out2, _ = run(capsys, "reduce", "--case", "eight-interior",
                     "--form", "x^2 y^5 dx", "--json")
    assert out1 == out2


def test_melnikov_subcommand(tmp_path, capsys):
    arc = tmp_path / "arc.json"
    arc.write_text(json.dumps({"lambda": [["0"], ["0"], ["0"], ["0"], ["0"], ["1"]]}))
    code, out, _ = run(capsys, "melnikov", "--case", "eight-exterior",
                       "--arc", str(arc), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 1
    assert data["p"] == ["32/21", "4/3"]
    assert data["q"] == ["0", "16/21"]


def test_melnikov_zero_arc_report(tmp_path, capsys):
    arc = tmp_path / "arc.json"
    arc.write_text(json.dumps({"lambda": [["0"]] * 6}))
    code, out, _ = run(capsys, "melnikov", "--case", "global-center",
                       "--arc", str(arc), "--max-order", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["all_vanished"] is True and data["arc_is_zero"] is True


def test_bautin_subcommand(capsys):
    code, out, _ = run(capsys, "bautin", "--a", "1", "--b", "-1")
    assert code == 0
    data = json.loads(out)
    assert len(data["generators"]) == 6
    assert data["generators"][2] == "l3^3"


def test_nakayama_subcommand(tmp_path, capsys):
    payload = {
        "nvars": 2,
        "b": [
            [[[2, 0], "1"], [[2, 2], "1"], [[1, 3], "1"], [[0, 4], "1"]],
            [[[0, 3], "1"], [[4, 0], "1"], [[3, 1], "1"]],
        ],
        "b0": [[[[2, 0], "1"]], [[[0, 3], "1"]]],
    }
    f = tmp_path / "naka.json"
    f.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "nakayama", "--input", str(f), "--cap", "12")
    assert code == 0
    assert json.loads(out)["certified"] is True


def test_nakayama_failure_exit_code(tmp_path, capsys):
    payload = {
        "nvars": 2,
        "b": [[[[2, 0], "1"], [[0, 1], "1"]], [[[0, 3], "1"]]],
        "b0": [[[[2, 0], "1"]], [[[0, 3], "1"]]],
    }
    f = tmp_path / "naka.json"
    f.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "nakayama", "--input", str(f), "--cap", "8")
    assert code == 1
    data = json.loads(out)
    assert data["certified"] is False
    assert data["offending_monomial"] == [0, 1]


def test_periods_subcommand_real(capsys):
    code, out, _ = run(capsys, "periods", "--case", "global-center",
                       "--h", "1.0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["I0"][0] > 0 and abs(data["I0"][1]) == 0.0


def test_periods_grid_csv(capsys):
    code, out, _ = run(capsys, "periods", "--case", "eight-exterior",
                       "--grid", "4", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "h,I0,I2,J0,J2"
    assert len(lines) == 5


def test_pfcheck_subcommand(capsys):
    code, out, _ = run(capsys, "pfcheck", "--case", "eight-exterior", "--grid", "10")
    assert code == 0
    assert "max residual" in out


def test_zeros_subcommand(capsys):
    code, out, _ = run(capsys, "zeros", "--case", "global-center",
                       "--q=-2,3,-1", "--method", "real", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 2
    assert data["certified"] is True


def test_zeros_random_batch_records_seed(capsys):
    code, out, _ = run(capsys, "zeros", "--case", "eight-interior",
                       "--random", "5", "--seed", "42", "--csv")
    assert code == 0
    assert out.startswith("# seed=42")
    assert "count,frequency" in out


def test_argwind_subcommand(capsys):
    code, out, _ = run(capsys, "argwind", "--p=0,0,0", "--q=1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["zero_bound_estimate"] == 0
    assert abs(data["winding"]) < 1e-6


def test_simulate_subcommand_json(capsys):
    code, out, _ = run(capsys, "simulate", "--case", "global-center",
                       "--lambda", "1,0,0,0,0,0", "--eps", "0.001",
                       "--grid", "8", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 0


def test_simulate_subcommand_csv(capsys):
    code, out, _ = run(capsys, "simulate", "--case", "global-center",
                       "--lambda", "0,0,0,0,0,0", "--eps", "0", "--grid", "5",
                       "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x0,h,d,return_time"
    assert len(lines) == 6


def test_validate_appendix(capsys):
    code, out, _ = run(capsys, "validate-appendix")
    assert code == 0
    assert "23/23 decompositions verified" in out


def test_validate_theorems(capsys):
    code, out, _ = run(capsys, "validate-theorems")
    assert code == 0
    assert "all theorem fixtures verified" in out


def test_unknown_case_is_usage_error(capsys):
    code, _, err = run(capsys, "periods", "--case", "global-center", "--h", "-5")
    assert code == 2
    assert "error" in err
