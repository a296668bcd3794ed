import json
import os
from fractions import Fraction as F

import pytest

from ckintervals import cli
from ckintervals.exact import surd
from ckintervals.interval import canonicalize, constant_interval, interval_equal
from ckintervals.literals import emit_field, emit_interval, emit_space, parse_field, parse_interval, parse_space
from ckintervals.space import AlphaN, Discrete, constant, fields_equal, seq_field


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_space_literals():
    for S in (Discrete(3), AlphaN(100, 2)):
        assert parse_space(emit_space(S)) == S


def test_field_literal_round_trip():
    S = AlphaN(20, 2)
    f = seq_field(S, [[1, F(1, 3)], [F(-1, 2)]], x0=F(1, 2), head={3: surd(0, 1, 2)}, prefix=[(1, [[5], [5]])], tail_start=4)
    g = parse_field(json.loads(json.dumps(emit_field(f))))
    assert fields_equal(f, g)
    d = parse_field({"space": {"kind": "discrete", "n": 3}, "values": ["1/2", "0.25", "-1"]})
    assert d.values() == [F(1, 2), F(1, 4), -1]


def test_interval_literals():
    I = parse_interval("[1/2, 3]")
    assert interval_equal(I, constant_interval(Discrete(1), F(1, 2), 3))
    assert emit_interval(I) == "[1/2,3]"
    S = AlphaN(10, 2)
    J = canonicalize(seq_field(S, [[1, 1], [1, -1]], x0=1), constant(S, 3))
    assert interval_equal(parse_interval(emit_interval(J)), J)
    with pytest.raises(ValueError):
        parse_interval("[1]")
    with pytest.raises(ValueError):
        parse_interval({"lower": {"values": [1]}})


def test_product_command(capsys):
    code, out, _ = run(capsys, "product", "--lhs", "[1,2]", "--rhs", "[3,4]")
    assert code == 0 and json.loads(out) == {"case": "3.1", "result": "[3,8]"}
    code, out, _ = run(capsys, "product", "--lhs", "[1,2]", "--rhs", "[-4,-3]")
    assert json.loads(out)["result"] == "[-8,-3]"


def test_sum_and_canonical(capsys):
    code, out, _ = run(capsys, "sum", "--lhs", "[-1,1]", "--rhs", "[-2,2]")
    assert code == 0 and json.loads(out)["result"] == "[-3,3]"
    code, out, _ = run(capsys, "canonical", "--interval", "[1,0]")
    assert code == 0 and json.loads(out)["empty"] is True


def test_sqrt_command(capsys):
    code, out, _ = run(capsys, "sqrt", "--interval", "[-2,1]")
    rep = json.loads(out)
    assert code == 1 and rep["error"] == "NoSquareRoot" and rep["point"] == 0
    code, out, _ = run(capsys, "sqrt", "--interval", "[-1/2,1/2]")
    rep = json.loads(out)
    assert code == 0 and rep["branch"] == 2 and rep["principal"] == "[-1/2*sqrt(2),1/2*sqrt(2)]"
    assert rep["verified"]["passed"]


def test_negative_result_exit_code(capsys, tmp_path):
    S = {"kind": "alphaN", "m": 10, "k": 2}
    lit = {"space": S, "lower": {"tail": {"classes": [["0", "1"], ["0", "1"]]}, "x0": "0"}, "upper": {"tail": {"classes": [["1"], ["1"]]}, "x0": "1"}}
    p = tmp_path / "i.json"
    p.write_text(json.dumps(lit))
    code, out, _ = run(capsys, "product", "--lhs", f"@{p}", "--rhs", f"@{p}")
    assert code == 1 and json.loads(out)["error"] == "NotSigned"


def test_input_errors_exit_2(capsys):
    code, out, err = run(capsys, "product", "--lhs", "[a,b]", "--rhs", "[1,2]")
    assert code == 2 and "error" in err and out == ""
    code, _, _ = run(capsys, "sum", "--lhs", "[1,2]")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_counterexample_command(capsys):
    code, out, _ = run(capsys, "counterexample", "thm32", "--depth", "100", "--summary")
    rep = json.loads(out)
    assert code == 0 and rep["certificate"]["cluster_gap"] == "1"
    assert [w["cutoff"] for w in rep["closure_witnesses"]] == [10, 100, 1000, 10**4, 10**5, 10**6]
    code, out, _ = run(capsys, "counterexample", "thm36", "--depth", "50", "--summary")
    assert json.loads(out)["certificate"]["cluster_gap"] == "-1/2+1/2*sqrt(2)"
    code, out, _ = run(capsys, "counterexample", "thm33", "--depth", "100", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "n,set" and len(lines) == 101


def test_selector_demo_csv(capsys):
    code, out, _ = run(capsys, "selector-demo", "--grid", "2", "--t", "1/2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 1 + 16
    assert lines[0] == "a,alpha,b,beta,t,P1,P2,product_residual,in_rect,case"


def test_scenario_file_and_atomic_out(capsys, tmp_path):
    sc = tmp_path / "s.json"
    sc.write_text(json.dumps({"lhs": "[1,2]", "rhs": "[3,4]"}))
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "product", "--scenario", str(sc), "--out", str(out))
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["result"] == "[3,8]"
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".ckintervals-")]


def test_report_round_trip(capsys):
    code, out, _ = run(capsys, "sqrt", "--interval", "[-1/2,1]")
    rep = json.loads(out)
    assert interval_equal(parse_interval(rep["principal"]), parse_interval("[-1/2,1]"))
    again = parse_interval(rep["mirrored"])
    assert emit_interval(again) == rep["mirrored"]


def test_oracle_check_command(capsys):
    code, out, _ = run(capsys, "oracle-check", "--trials", "20", "--size", "2", "--profile", "nonneg")
    assert code == 0 and json.loads(out)["discrepancies"] == 0
    code, out, _ = run(capsys, "oracle-check", "--trials", "20", "--size", "9")
    assert code == 2
